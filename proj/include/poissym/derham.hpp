#pragma once

// The naive de Rham complex of the Lie-Rinehart pair (Der(A), A), with
// cochains stored by their values on a fixed generator list of Der(A) and
// extended A-multilinearly.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "poissym/certificate.hpp"
#include "poissym/errors.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/parallel.hpp"
#include "poissym/poisson.hpp"
#include "poissym/tangent.hpp"

namespace poissym {

/// A bilinear form on Der(A) recorded by its values on the presentation's
/// generators: gram.at(i, j) = ω(X_i, X_j), read modulo I.
struct GramForm {
  DerPresentation presentation;
  PolyMatrix gram;
  /// Set when ω(extra_i, extra_j) was defaulted to 0 for two or more extras.
  bool isotropic_heuristic = false;
  std::vector<std::string> notes;
};

/// Thrown when the Lie bracket of two generators is not in their span
/// modulo I·P^n.
class InexpressibleBracket : public Error {
 public:
  using Error::Error;
};

/// Alternating cochain of arity p on the generators. Only strictly
/// increasing index tuples are stored; missing tuples mean 0.
class Cochain {
 public:
  using Tuple = std::vector<std::size_t>;

  Cochain(std::size_t arity, std::size_t generators, std::size_t nvars)
      : arity_(arity), generators_(generators), nvars_(nvars) {}

  /// The 0-cochain given by a function.
  static Cochain function(const Poly& a, std::size_t generators) {
    Cochain c(0, generators, a.nvars());
    c.set({}, a);
    return c;
  }

  static Cochain from_gram(const GramForm& w) {
    const std::size_t g = w.gram.rows();
    Cochain c(2, g, w.gram.nvars());
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i + 1; j < g; ++j) c.set({i, j}, w.gram.at(i, j));
    return c;
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t generator_count() const noexcept { return generators_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Tuple, Poly>& values() const noexcept { return values_; }

  /// Value on an arbitrary tuple: the stored value with the sign of the
  /// sorting permutation, or 0 when an index repeats.
  Poly value(std::span<const std::size_t> tuple) const {
    if (tuple.size() != arity_) throw InputError("cochain evaluated on a tuple of the wrong length");
    Tuple t(tuple.begin(), tuple.end());
    bool odd = false;
    for (std::size_t i = 1; i < t.size(); ++i)
      for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
        if (t[j - 1] == t[j]) return Poly(nvars_);
        std::swap(t[j - 1], t[j]);
        odd = !odd;
      }
    auto it = values_.find(t);
    if (it == values_.end()) return Poly(nvars_);
    return odd ? -it->second : it->second;
  }

  Poly value(std::initializer_list<std::size_t> tuple) const {
    return value(std::span<const std::size_t>(tuple.begin(), tuple.size()));
  }

  /// Stores a value on a strictly increasing tuple.
  void set(Tuple t, Poly v) {
    if (t.size() != arity_) throw InputError("cochain value on a tuple of the wrong length");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= generators_) throw InputError("cochain index out of range");
      if (i > 0 && t[i - 1] >= t[i]) throw InputError("cochain values are stored on increasing tuples");
    }
    if (v.is_zero())
      values_.erase(t);
    else
      values_[std::move(t)] = std::move(v);
  }

  /// All strictly increasing tuples of length p over g generators,
  /// lexicographically ordered.
  static std::vector<Tuple> increasing_tuples(std::size_t g, std::size_t p) {
    std::vector<Tuple> out;
    if (p > g) return out;
    Tuple t(p);
    for (std::size_t i = 0; i < p; ++i) t[i] = i;
    for (;;) {
      out.push_back(t);
      std::size_t k = p;
      while (k > 0 && t[k - 1] == g - p + k - 1) --k;
      if (k == 0) return out;
      ++t[k - 1];
      for (std::size_t i = k; i < p; ++i) t[i] = t[i - 1] + 1;
    }
  }

 private:
  std::size_t arity_, generators_, nvars_;
  std::map<Tuple, Poly> values_;
};

namespace detail {

inline std::string tuple_name(const DerPresentation& pres, std::span<const std::size_t> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ", ";
    s += pres.names.at(t[i]);
  }
  return s + ")";
}

/// Coefficients of [X_i, X_j] (i < j) in the generators modulo I·P^n.
class BracketTable {
 public:
  explicit BracketTable(const DerPresentation& pres) : g_(pres.size()), table_(g_ * g_) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < g_; ++i)
      for (std::size_t j = i + 1; j < g_; ++j) pairs.emplace_back(i, j);
    auto coeffs = parallel_map<std::vector<Poly>>(pairs.size(), [&](std::size_t k) {
      const auto [i, j] = pairs[k];
      auto c = pres.expander().express(lie_bracket(pres.generators[i], pres.generators[j]));
      if (!c)
        throw InexpressibleBracket("the bracket [" + pres.names[i] + ", " + pres.names[j] +
                                   "] is not a combination of the generators modulo I");
      return std::move(*c);
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) table_[pairs[k].first * g_ + pairs[k].second] = std::move(coeffs[k]);
  }

  /// Coefficients of [X_i, X_j] for i < j.
  const std::vector<Poly>& at(std::size_t i, std::size_t j) const { return table_[i * g_ + j]; }

 private:
  std::size_t g_;
  std::vector<std::vector<Poly>> table_;
};

/// Koszul formula on an increasing tuple, before reduction modulo I.
inline Poly koszul_value(const Cochain& w, const DerPresentation& pres, const BracketTable* brackets,
                         const Cochain::Tuple& t) {
  const std::size_t m = t.size();
  Poly out(pres.ring().size());
  Cochain::Tuple rest;
  for (std::size_t a = 0; a < m; ++a) {
    rest.clear();
    for (std::size_t k = 0; k < m; ++k)
      if (k != a) rest.push_back(t[k]);
    Poly term = apply_field(pres.generators[t[a]], w.value(rest));
    if (a % 2) term = -term;
    out += term;
  }
  if (m < 2) return out;
  Cochain::Tuple args;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto& c = brackets->at(t[a], t[b]);
      Poly term(pres.ring().size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        args.assign(1, k);
        for (std::size_t r = 0; r < m; ++r)
          if (r != a && r != b) args.push_back(t[r]);
        const Poly v = w.value(args);
        if (!v.is_zero()) term += c[k] * v;
      }
      if ((a + b) % 2) term = -term;
      out += term;
    }
  return out;
}

inline Certificate make_certificate(std::string kind, const Ideal& I) {
  Certificate c;
  c.kind = std::move(kind);
  c.ring = I.ring();
  c.ideal = I.generators();
  return c;
}

inline void settle(Certificate& c, const Ideal& I) {
  c.passed = std::all_of(c.evidence.begin(), c.evidence.end(),
                         [&](const Evidence& e) { return normal_form(e.residual, I).is_zero(); });
}

}  // namespace detail

/// ω^Ham extended to all generators: ω(H_a, X) = X(a), the transposed
/// entries by antisymmetry, and ω(extra, extra) = 0.
inline GramForm omega_ham(const DerPresentation& pres) {
  if (!pres.poisson) throw InputError("omega_ham: the presentation was built without a Poisson structure");
  const std::size_t g = pres.size();
  const std::size_t nvars = pres.ring().size();
  if (g > 0 && std::none_of(pres.labels.begin(), pres.labels.end(),
                            [](const GeneratorLabel& l) { return l.is_hamiltonian(); }))
    throw InputError("omega_ham: the presentation has no Hamiltonian generators");
  GramForm out{pres, PolyMatrix(g, g, nvars)};
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      if (i == j) continue;
      if (pres.labels[i].is_hamiltonian())
        out.gram.at(i, j) = apply_field(pres.generators[j], *pres.labels[i].function);
      else if (pres.labels[j].is_hamiltonian())
        out.gram.at(i, j) = -apply_field(pres.generators[i], *pres.labels[j].function);
    }
  if (pres.extra_count() >= 2) {
    out.isotropic_heuristic = true;
    out.notes.push_back("omega(extra, extra) set to 0 for " + std::to_string(pres.extra_count()) +
                        " extra generators (isotropic choice, not derived)");
  }
  return out;
}

/// A form with explicitly supplied Gram matrix on `pres`.
inline GramForm gram_form(const DerPresentation& pres, PolyMatrix gram) {
  if (gram.rows() != pres.size() || gram.cols() != pres.size())
    throw InputError("Gram matrix size differs from the number of generators");
  return GramForm{pres, std::move(gram)};
}

/// ω descends to Der(A): antisymmetric modulo I and zero on every relation
/// in either argument.
inline Certificate check_descends(const GramForm& w) {
  const auto& pres = w.presentation;
  const auto& I = pres.ideal;
  const std::size_t g = w.gram.rows();
  Certificate cert = detail::make_certificate("descent", I);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      Poly r = i == j ? w.gram.at(i, i) : w.gram.at(i, j) + w.gram.at(j, i);
      cert.evidence.push_back({"antisymmetry omega" + detail::tuple_name(pres, std::vector<std::size_t>{i, j}), {i, j},
                               std::move(r)});
    }
  const auto& rels = pres.relations.generators();
  const PolyMatrix gt = w.gram.transpose();
  for (std::size_t b = 0; b < rels.size(); ++b) {
    const ModVec left = gt * rels[b];
    const ModVec right = w.gram * rels[b];
    for (std::size_t i = 0; i < g; ++i) {
      cert.evidence.push_back(
          {"omega(rel[" + std::to_string(b) + "], " + pres.names[i] + ")", {b, i}, left[i]});
      cert.evidence.push_back(
          {"omega(" + pres.names[i] + ", rel[" + std::to_string(b) + "])", {b, i}, right[i]});
    }
  }
  if (rels.empty()) cert.notes.push_back("no relations: Der(A) is presented freely on the generators");
  detail::settle(cert, I);
  return cert;
}

/// ker ω over A.
inline SubModule form_kernel(const GramForm& w) {
  if (w.gram.rows() == 0) return SubModule(0, w.gram.nvars());
  return kernel_over_quotient(w.gram, w.presentation.ideal);
}

/// ker ω equals the relation module modulo I, so ω induces an injective map
/// Der(A) -> Hom_A(Der(A), A).
inline Certificate nondegeneracy_check(const GramForm& w) {
  const auto& pres = w.presentation;
  const auto& I = pres.ideal;
  const std::size_t g = w.gram.rows();
  Certificate cert = detail::make_certificate("nondegeneracy", I);
  const SubModule K = form_kernel(w);
  const auto& rels = pres.relations.generators();
  bool complete = true;

  std::optional<GeneratorExpander> rel_span;
  if (g > 0) rel_span.emplace(rels, g, I);
  const SubModule rel_mod = with_ideal(pres.relations, I);

  for (std::size_t a = 0; a < K.generators().size(); ++a) {
    const ModVec& k = K.generators()[a];
    const ModVec image = w.gram * k;
    for (std::size_t i = 0; i < g; ++i)
      cert.evidence.push_back({"omega(ker[" + std::to_string(a) + "], " + pres.names[i] + ")", {a, i}, image[i]});
    auto c = rel_span->express(k);
    if (c) {
      ModVec diff = k;
      for (std::size_t b = 0; b < rels.size(); ++b)
        if (!(*c)[b].is_zero()) diff -= (*c)[b] * rels[b];
      for (std::size_t i = 0; i < g; ++i)
        cert.evidence.push_back(
            {"ker[" + std::to_string(a) + "] - relations, entry " + std::to_string(i), {a, i}, diff[i]});
    } else {
      complete = false;
      const ModVec rem = rel_mod.reduce(k);
      std::size_t top = g;
      while (top > 0 && rem[top - 1].is_zero()) --top;
      cert.evidence.push_back({"ker[" + std::to_string(a) + "] outside the relations, entry " + std::to_string(top - 1),
                               {a, top - 1}, rem[top - 1]});
      cert.notes.push_back("kernel vector " + canonical_string(k, pres.ring()) + " is not a relation");
    }
  }
  for (std::size_t b = 0; b < rels.size(); ++b) {
    const ModVec image = w.gram * rels[b];
    for (std::size_t i = 0; i < g; ++i)
      cert.evidence.push_back({"omega(rel[" + std::to_string(b) + "], " + pres.names[i] + ")", {b, i}, image[i]});
  }
  detail::settle(cert, I);
  cert.passed = cert.passed && complete;
  return cert;
}

/// Koszul differential, values reduced modulo I.
inline Cochain d_naive(const Cochain& w, const DerPresentation& pres, unsigned threads = configured_threads()) {
  const std::size_t g = pres.size();
  if (w.generator_count() != g) throw InputError("d_naive: cochain and presentation disagree on the generators");
  std::optional<detail::BracketTable> brackets;
  if (w.arity() >= 1) brackets.emplace(pres);
  const auto tuples = Cochain::increasing_tuples(g, w.arity() + 1);
  auto vals = parallel_map<Poly>(
      tuples.size(),
      [&](std::size_t k) {
        return normal_form(detail::koszul_value(w, pres, brackets ? &*brackets : nullptr, tuples[k]), pres.ideal);
      },
      threads);
  Cochain out(w.arity() + 1, g, w.nvars());
  for (std::size_t k = 0; k < tuples.size(); ++k) out.set(tuples[k], std::move(vals[k]));
  return out;
}

/// dω = 0 on every generator triple. Evidence holds the unreduced Koszul
/// sums in lexicographic triple order.
inline Certificate closedness_check(const GramForm& w, unsigned threads = configured_threads()) {
  const auto& pres = w.presentation;
  Certificate cert = detail::make_certificate("closedness", pres.ideal);
  const Cochain omega = Cochain::from_gram(w);
  const std::size_t g = pres.size();
  std::optional<detail::BracketTable> brackets;
  if (g >= 2) brackets.emplace(pres);
  const auto triples = Cochain::increasing_tuples(g, 3);
  auto vals = parallel_map<Poly>(
      triples.size(), [&](std::size_t k) { return detail::koszul_value(omega, pres, &*brackets, triples[k]); }, threads);
  for (std::size_t k = 0; k < triples.size(); ++k)
    cert.evidence.push_back({"d omega" + detail::tuple_name(pres, triples[k]), triples[k], std::move(vals[k])});
  if (triples.empty()) cert.notes.push_back("fewer than three generators: no triples to check");
  detail::settle(cert, pres.ideal);
  return cert;
}

/// δ^Ham ω^Ham = 0 on triples of Hamiltonian generators, evaluated with
/// ω(H_u, Z) = Z(u) for the brackets [H_a, H_b] directly. Refused (failing
/// certificate) when the Poisson structure violates the Jacobi identity.
inline Certificate delta_ham_check(const DerPresentation& pres) {
  if (!pres.poisson) throw InputError("delta_ham_check: the presentation was built without a Poisson structure");
  Certificate cert = detail::make_certificate("delta_ham", pres.ideal);
  const auto& jac = pres.poisson->jacobi();
  if (!jac.holds) {
    const auto [i, j, k] = *jac.counterexample;
    const auto& R = pres.ring();
    cert.notes.push_back("refused: the Jacobi identity fails for (" + R.name(i) + ", " + R.name(j) + ", " +
                         R.name(k) + ")");
    cert.evidence.push_back({"jacobiator(" + R.name(i) + ", " + R.name(j) + ", " + R.name(k) + ")",
                             {i, j, k},
                             *jac.jacobiator});
    cert.passed = false;
    return cert;
  }
  std::vector<std::size_t> hams;
  for (std::size_t i = 0; i < pres.size(); ++i)
    if (pres.labels[i].is_hamiltonian()) hams.push_back(i);
  for (const auto& t : Cochain::increasing_tuples(hams.size(), 3)) {
    const std::size_t i = hams[t[0]], j = hams[t[1]], k = hams[t[2]];
    const ModVec &Hi = pres.generators[i], &Hj = pres.generators[j], &Hk = pres.generators[k];
    const Poly &ai = *pres.labels[i].function, &aj = *pres.labels[j].function, &ak = *pres.labels[k].function;
    Poly r = apply_field(Hi, apply_field(Hk, aj)) - apply_field(Hj, apply_field(Hk, ai)) +
             apply_field(Hk, apply_field(Hj, ai)) + apply_field(lie_bracket(Hi, Hj), ak) -
             apply_field(lie_bracket(Hi, Hk), aj) + apply_field(lie_bracket(Hj, Hk), ai);
    cert.evidence.push_back({"delta omega" + detail::tuple_name(pres, std::vector<std::size_t>{i, j, k}),
                             {i, j, k},
                             std::move(r)});
  }
  if (hams.size() < 3) cert.notes.push_back("fewer than three Hamiltonian generators: no triples to check");
  detail::settle(cert, pres.ideal);
  return cert;
}

/// (ω ∪ η)(X_1..X_{p+q}) = Σ_{(p,q)-shuffles σ} sgn(σ) ω(X_σ(1..p)) η(X_σ(p+1..p+q)),
/// reduced modulo I.
inline Cochain cup_product(const Cochain& w, const Cochain& h, const DerPresentation& pres) {
  const std::size_t p = w.arity(), q = h.arity(), g = pres.size();
  if (w.generator_count() != g || h.generator_count() != g)
    throw InputError("cup_product: cochains and presentation disagree on the generators");
  Cochain out(p + q, g, w.nvars());
  for (const auto& t : Cochain::increasing_tuples(g, p + q)) {
    Poly sum(w.nvars());
    // positions chosen for the first p slots, in increasing order
    for (const auto& chosen : Cochain::increasing_tuples(p + q, p)) {
      Cochain::Tuple first, second;
      std::size_t inversions = 0, c = 0;
      for (std::size_t pos = 0; pos < p + q; ++pos) {
        if (c < p && chosen[c] == pos) {
          first.push_back(t[pos]);
          inversions += pos - c;
          ++c;
        } else {
          second.push_back(t[pos]);
        }
      }
      const Poly a = w.value(first);
      if (a.is_zero()) continue;
      const Poly b = h.value(second);
      if (b.is_zero()) continue;
      Poly term = a * b;
      sum += inversions % 2 ? -term : term;
    }
    out.set(t, normal_form(sum, pres.ideal));
  }
  return out;
}

/// Determinant over P by expansion over column subsets.
inline Poly determinant(const PolyMatrix& M) {
  const std::size_t g = M.rows();
  if (M.cols() != g) throw InputError("determinant of a non-square matrix");
  if (g > 20) throw ResourceError("determinant: matrix too large for exact expansion");
  if (g == 0) return Poly::constant(M.nvars(), Rational(1));
  std::vector<Poly> f(std::size_t{1} << g, Poly(M.nvars()));
  f[0] = Poly::constant(M.nvars(), Rational(1));
  for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
    if (f[mask].is_zero()) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    if (row == g) continue;
    for (std::size_t c = 0; c < g; ++c) {
      if (mask & (1u << c) || M.at(row, c).is_zero()) continue;
      const bool odd = std::popcount(mask >> (c + 1)) % 2;
      Poly term = f[mask] * M.at(row, c);
      f[mask | (1u << c)] += odd ? -term : term;
    }
  }
  return f.back();
}

struct GramDeterminant {
  Poly raw;
  Poly reduced;
  /// raw = coefficient * f^power when the ideal is principal (f) and the
  /// quotient by the largest power of f is constant.
  std::optional<std::pair<Rational, unsigned>> power_form;
};

inline GramDeterminant gram_determinant(const GramForm& w) {
  const auto& I = w.presentation.ideal;
  GramDeterminant out{determinant(w.gram), Poly(w.gram.nvars())};
  out.reduced = normal_form(out.raw, I);
  const auto gens = I.nonzero_generators();
  if (gens.size() == 1 && !out.raw.is_zero()) {
    const Ideal principal(I.ring(), {gens.front()});
    Poly rest = out.raw;
    unsigned k = 0;
    for (auto m = ideal_membership(rest, principal); m.member; m = ideal_membership(rest, principal)) {
      rest = (*m.witness)[0];
      ++k;
    }
    if (rest.is_constant()) out.power_form = std::make_pair(rest.constant_term(), k);
  }
  return out;
}

}  // namespace poissym
