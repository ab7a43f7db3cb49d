#pragma once

// Buchberger's algorithm for submodules of P^m under a position-over-term
// order, with the Gebauer–Möller installation of the chain criterion (and
// the product criterion when m == 1). Ideals are the rank-one case.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "poissym/modvec.hpp"
#include "poissym/monomial.hpp"
#include "poissym/poly.hpp"

namespace poissym::detail {

struct MTerm {
  std::uint32_t pos;
  Monomial mono;
  Rational coeff;
};

/// Module element as a term list, strictly descending under the order.
using MPoly = std::vector<MTerm>;

class TermArith {
 public:
  explicit TermArith(ModuleOrder ord) : ord_(ord) {}

  const ModuleOrder& order() const noexcept { return ord_; }

  int compare(const MTerm& a, const MTerm& b) const { return ord_.compare(a.pos, a.mono, b.pos, b.mono); }

  /// Entries of `v` placed at positions offset, offset+1, ...
  MPoly from_modvec(const ModVec& v, std::uint32_t offset = 0) const {
    MPoly out;
    for (std::size_t i = 0; i < v.rank(); ++i)
      for (const auto& t : v[i].terms())
        out.push_back({static_cast<std::uint32_t>(offset + i), t.mono, t.coeff});
    sort(out);
    return out;
  }

  MPoly from_poly(const Poly& p, std::uint32_t pos = 0) const {
    MPoly out;
    for (const auto& t : p.terms()) out.push_back({pos, t.mono, t.coeff});
    sort(out);
    return out;
  }

  /// Positions [lo, lo+count) of `f` as a vector of rank `count`.
  static ModVec to_modvec(const MPoly& f, std::uint32_t lo, std::size_t count, std::size_t nvars) {
    std::vector<std::vector<Poly::Term>> buckets(count);
    for (const auto& t : f)
      if (t.pos >= lo && t.pos < lo + count) buckets[t.pos - lo].push_back({t.mono, t.coeff});
    std::vector<Poly> entries;
    entries.reserve(count);
    for (auto& b : buckets) entries.push_back(Poly::from_terms(nvars, std::move(b)));
    return count == 0 ? ModVec(0, nvars) : ModVec(std::move(entries));
  }

  /// a[start..] - c * m * b
  MPoly sub_mul(const MPoly& a, std::size_t start, const Rational& c, const Monomial& m, const MPoly& b) const {
    MPoly out;
    out.reserve(a.size() - start + b.size());
    std::size_t i = start, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size()) {
        out.push_back(a[i++]);
        continue;
      }
      MTerm scaled{b[j].pos, b[j].mono * m, Rational()};
      int cmp = i == a.size() ? -1 : compare(a[i], scaled);
      if (cmp > 0) {
        out.push_back(a[i++]);
      } else if (cmp < 0) {
        scaled.coeff = -c * b[j].coeff;
        out.push_back(std::move(scaled));
        ++j;
      } else {
        Rational s = a[i].coeff - c * b[j].coeff;
        if (s != 0) out.push_back({a[i].pos, a[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  static MPoly mul(const MPoly& a, const Monomial& m) {
    MPoly out;
    out.reserve(a.size());
    for (const auto& t : a) out.push_back({t.pos, t.mono * m, t.coeff});
    return out;
  }

  static void make_monic(MPoly& f) {
    if (f.empty() || f.front().coeff == 1) return;
    const Rational inv = 1 / f.front().coeff;
    for (auto& t : f) t.coeff *= inv;
  }

  void sort(MPoly& f) const {
    std::sort(f.begin(), f.end(), [&](const MTerm& a, const MTerm& b) { return compare(a, b) > 0; });
  }

 private:
  ModuleOrder ord_;
};

/// Reduced Gröbner basis of a submodule of P^rank.
class ModuleGB {
 public:
  ModuleGB(const std::vector<MPoly>& gens, std::size_t rank, std::size_t nvars, ModuleOrder ord)
      : arith_(ord), rank_(rank), nvars_(nvars) {
    run(gens);
  }

  const TermArith& arith() const noexcept { return arith_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t nvars() const noexcept { return nvars_; }

  /// Monic, interreduced, sorted ascending by leading term.
  const std::vector<MPoly>& elements() const noexcept { return elements_; }

  /// Full remainder of `f` modulo the basis.
  MPoly normal_form(MPoly f) const {
    MPoly rem;
    std::size_t start = 0;
    while (start < f.size()) {
      const MTerm& lt = f[start];
      if (const MPoly* r = find_reducer(elements_, lt)) {
        f = arith_.sub_mul(f, start, lt.coeff, lt.mono / r->front().mono, *r);
        start = 0;
      } else {
        rem.push_back(std::move(f[start]));
        ++start;
      }
    }
    return rem;
  }

  /// Top-reduces `f` until no term at a position >= `bound` remains and
  /// returns what is left, or nullopt when some leading term at such a
  /// position is irreducible (i.e. the projection is not in the module).
  std::optional<MPoly> eliminate_above(MPoly f, std::uint32_t bound) const {
    while (!f.empty() && f.front().pos >= bound) {
      const MTerm& lt = f.front();
      const MPoly* r = find_reducer(elements_, lt);
      if (!r) return std::nullopt;
      f = arith_.sub_mul(f, 0, lt.coeff, lt.mono / r->front().mono, *r);
    }
    return f;
  }

  std::size_t pairs_considered() const noexcept { return pairs_considered_; }

 private:
  struct Elem {
    MPoly poly;
    bool active = true;
  };
  struct Pair {
    std::size_t i, j;
    std::uint32_t pos;
    Monomial lcm;
  };

  static const MPoly* find_reducer(const std::vector<MPoly>& basis, const MTerm& lt) {
    for (const auto& g : basis)
      if (g.front().pos == lt.pos && g.front().mono.divides(lt.mono)) return &g;
    return nullptr;
  }

  const MPoly* find_active_reducer(const MTerm& lt) const {
    for (const auto& e : work_)
      if (e.active && e.poly.front().pos == lt.pos && e.poly.front().mono.divides(lt.mono)) return &e.poly;
    return nullptr;
  }

  MPoly reduce_by_work(MPoly f) const {
    MPoly rem;
    std::size_t start = 0;
    while (start < f.size()) {
      const MTerm& lt = f[start];
      if (const MPoly* r = find_active_reducer(lt)) {
        f = arith_.sub_mul(f, start, lt.coeff, lt.mono / r->front().mono, *r);
        start = 0;
      } else {
        rem.push_back(std::move(f[start]));
        ++start;
      }
    }
    return rem;
  }

  bool product_criterion_applies(const MTerm& a, const MTerm& b) const {
    return rank_ == 1 && coprime(a.mono, b.mono);
  }

  void add(MPoly h) {
    TermArith::make_monic(h);
    const std::size_t hi = work_.size();
    const MTerm hl = h.front();

    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < work_.size(); ++g)
      if (work_[g].active && work_[g].poly.front().pos == hl.pos) candidates.push_back(g);

    auto lcm_with = [&](std::size_t g) { return lcm(hl.mono, work_[g].poly.front().mono); };

    // Gebauer–Möller: among new pairs keep those whose lcm is not a
    // multiple of another new pair's lcm.
    std::vector<std::size_t> kept;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      const std::size_t g1 = candidates[idx];
      const Monomial l1 = lcm_with(g1);
      bool keep = product_criterion_applies(hl, work_[g1].poly.front());
      if (!keep) {
        keep = true;
        for (std::size_t k = idx + 1; k < candidates.size() && keep; ++k)
          if (lcm_with(candidates[k]).divides(l1)) keep = false;
        for (std::size_t g2 : kept)
          if (keep && lcm_with(g2).divides(l1)) keep = false;
      }
      if (keep) kept.push_back(g1);
    }

    // Chain criterion on the old pairs.
    std::erase_if(pairs_, [&](const Pair& p) {
      if (p.pos != hl.pos || !hl.mono.divides(p.lcm)) return false;
      return lcm_with(p.i) != p.lcm && lcm_with(p.j) != p.lcm;
    });

    for (std::size_t g : kept) {
      if (product_criterion_applies(hl, work_[g].poly.front())) continue;
      pairs_.push_back({g, hi, hl.pos, lcm_with(g)});
    }

    for (std::size_t g : candidates)
      if (hl.mono.divides(work_[g].poly.front().mono)) work_[g].active = false;

    work_.push_back({std::move(h), true});
  }

  void run(const std::vector<MPoly>& gens) {
    for (const auto& g : gens) {
      MPoly r = reduce_by_work(g);
      if (!r.empty()) add(std::move(r));
    }
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin() + 1; it != pairs_.end(); ++it) {
        int c = arith_.order().compare(it->pos, it->lcm, best->pos, best->lcm);
        if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
      }
      const Pair p = *best;
      pairs_.erase(best);
      ++pairs_considered_;

      const MPoly& a = work_[p.i].poly;
      const MPoly& b = work_[p.j].poly;
      MPoly s = TermArith::mul(a, p.lcm / a.front().mono);
      s = arith_.sub_mul(s, 0, Rational(1), p.lcm / b.front().mono, b);
      MPoly r = reduce_by_work(std::move(s));
      if (!r.empty()) add(std::move(r));
    }

    std::vector<MPoly> minimal;
    for (auto& e : work_)
      if (e.active) minimal.push_back(std::move(e.poly));
    work_.clear();

    // interreduce tails
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      MPoly tail(minimal[i].begin() + 1, minimal[i].end());
      MPoly rem;
      std::size_t start = 0;
      while (start < tail.size()) {
        const MTerm& lt = tail[start];
        const MPoly* r = nullptr;
        for (std::size_t k = 0; k < minimal.size() && !r; ++k)
          if (k != i && minimal[k].front().pos == lt.pos && minimal[k].front().mono.divides(lt.mono))
            r = &minimal[k];
        if (r) {
          tail = arith_.sub_mul(tail, start, lt.coeff, lt.mono / r->front().mono, *r);
          start = 0;
        } else {
          rem.push_back(std::move(tail[start]));
          ++start;
        }
      }
      MPoly reduced;
      reduced.reserve(rem.size() + 1);
      reduced.push_back(std::move(minimal[i].front()));
      for (auto& t : rem) reduced.push_back(std::move(t));
      minimal[i] = std::move(reduced);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const MPoly& a, const MPoly& b) { return arith_.compare(a.front(), b.front()) < 0; });
    elements_ = std::move(minimal);
  }

  TermArith arith_;
  std::size_t rank_;
  std::size_t nvars_;
  std::vector<Elem> work_;
  std::vector<Pair> pairs_;
  std::vector<MPoly> elements_;
  std::size_t pairs_considered_ = 0;
};

}  // namespace poissym::detail
