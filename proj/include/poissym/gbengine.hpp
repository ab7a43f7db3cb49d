#pragma once

// Gröbner bases, normal forms, syzygies, elimination and module kernels over
// P = k[x1..xn] and over A = P/I.
//
// Lifts (cofactors, Poissoffel symbols, bracket expansions) are whatever the
// deterministic division order produces. They are not unique and callers
// must not depend on a particular lift.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poissym/detail/module_gb.hpp"
#include "poissym/errors.hpp"
#include "poissym/modvec.hpp"
#include "poissym/polyring.hpp"

namespace poissym {

/// Gröbner basis of the module generated by `gens`, with enough bookkeeping
/// to express members as P-combinations of `gens` and to read off the
/// syzygies of `gens`.
///
/// Internally the basis of {(e_j | g_j)} in P^(s + rank) is computed under
/// position-over-term with the vector part dominating; the elements whose
/// vector part vanishes generate Syz(g_1..g_s).
class TrackedBasis {
 public:
  TrackedBasis(std::vector<ModVec> gens, std::size_t rank, std::size_t nvars,
               MonomialOrder base = MonomialOrder::grevlex())
      : gens_(std::move(gens)), rank_(rank), nvars_(nvars) {
    detail::TermArith arith{ModuleOrder(base)};
    const auto s = static_cast<std::uint32_t>(gens_.size());
    std::vector<detail::MPoly> augmented;
    augmented.reserve(gens_.size());
    for (std::uint32_t j = 0; j < s; ++j) {
      if (gens_[j].rank() != rank_) throw InputError("generator rank mismatch");
      detail::MPoly f = arith.from_modvec(gens_[j], s);
      f.push_back({j, Monomial(nvars_), Rational(1)});  // e_j sits below every vector term
      augmented.push_back(std::move(f));
    }
    gb_ = std::make_unique<detail::ModuleGB>(augmented, s + rank_, nvars_, ModuleOrder(base));
  }

  std::size_t generator_count() const noexcept { return gens_.size(); }
  const std::vector<ModVec>& generators() const& noexcept { return gens_; }
  std::vector<ModVec> generators() && { return std::move(gens_); }

  /// Coefficients c with v = sum_j c_j * gens_j exactly, or nullopt.
  std::optional<std::vector<Poly>> lift(const ModVec& v) const {
    if (v.rank() != rank_) throw InputError("lift: rank mismatch");
    const auto s = static_cast<std::uint32_t>(gens_.size());
    auto rest = gb_->eliminate_above(gb_->arith().from_modvec(v, s), s);
    if (!rest) return std::nullopt;
    ModVec w = detail::TermArith::to_modvec(*rest, 0, gens_.size(), nvars_);
    return (-w).entries();
  }

  /// Generators of Syz(gens) (a Gröbner basis of it), made primitive.
  std::vector<ModVec> syzygies() const {
    const auto s = static_cast<std::uint32_t>(gens_.size());
    std::vector<ModVec> out;
    for (const auto& g : gb_->elements())
      if (g.front().pos < s) out.push_back(detail::TermArith::to_modvec(g, 0, gens_.size(), nvars_).primitive());
    return out;
  }

 private:
  std::vector<ModVec> gens_;
  std::size_t rank_;
  std::size_t nvars_;
  std::unique_ptr<detail::ModuleGB> gb_;
};

namespace detail {

inline std::vector<ModVec> as_vectors(std::span<const Poly> polys) {
  std::vector<ModVec> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.emplace_back(std::vector<Poly>{p});
  return out;
}

/// Shared lazily-filled cache; copies of a value share it.
struct GbCache {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const ModuleGB>> bases;
  std::shared_ptr<const TrackedBasis> tracked;
};

}  // namespace detail

/// Ideal of P given by generators; Gröbner bases are computed on demand and
/// cached per order.
class Ideal {
 public:
  Ideal() : cache_(std::make_shared<detail::GbCache>()) {}
  Ideal(VarRing ring, std::vector<Poly> gens)
      : ring_(std::move(ring)), gens_(std::move(gens)), cache_(std::make_shared<detail::GbCache>()) {
    for (const auto& g : gens_)
      if (g.nvars() != ring_.size()) throw InputError("ideal generator outside the ring");
  }

  static Ideal zero(VarRing ring) {
    Poly z = ring.zero();
    return Ideal(std::move(ring), {z});
  }

  const VarRing& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_.size(); }
  const std::vector<Poly>& generators() const& noexcept { return gens_; }
  std::vector<Poly> generators() && { return std::move(gens_); }

  std::vector<Poly> nonzero_generators() const {
    std::vector<Poly> out;
    for (const auto& g : gens_)
      if (!g.is_zero()) out.push_back(g);
    return out;
  }

  bool is_zero() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const Poly& g) { return g.is_zero(); });
  }

  const detail::ModuleGB& basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->bases[ord.name()];
    if (!slot) {
      detail::TermArith arith{ModuleOrder(ord)};
      std::vector<detail::MPoly> gens;
      for (const auto& g : gens_) gens.push_back(arith.from_poly(g));
      slot = std::make_shared<detail::ModuleGB>(gens, 1, nvars(), ModuleOrder(ord));
    }
    return *slot;
  }

  /// Reduced Gröbner basis under `ord`, ascending by leading term.
  std::vector<Poly> groebner_basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    std::vector<Poly> out;
    for (const auto& g : basis(ord).elements()) out.push_back(to_poly(g));
    return out;
  }

  Poly reduce(const Poly& f, const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    const auto& gb = basis(ord);
    return to_poly(gb.normal_form(gb.arith().from_poly(f)));
  }

  bool contains(const Poly& f) const { return reduce(f).is_zero(); }

  /// Cofactor tracking basis for the generator list (grevlex).
  const TrackedBasis& tracked() const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->tracked)
      cache_->tracked = std::make_shared<TrackedBasis>(detail::as_vectors(gens_), 1, nvars());
    return *cache_->tracked;
  }

 private:
  Poly to_poly(const detail::MPoly& f) const {
    std::vector<Poly::Term> terms;
    for (const auto& t : f) terms.push_back({t.mono, t.coeff});
    return Poly::from_terms(nvars(), std::move(terms));
  }

  VarRing ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<detail::GbCache> cache_;
};

/// Submodule of P^rank given by generators.
class SubModule {
 public:
  SubModule(std::size_t rank, std::size_t nvars, std::vector<ModVec> gens = {})
      : rank_(rank), nvars_(nvars), gens_(std::move(gens)), cache_(std::make_shared<detail::GbCache>()) {
    for (const auto& g : gens_)
      if (g.rank() != rank_) throw InputError("submodule generator of wrong rank");
  }

  std::size_t rank() const noexcept { return rank_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<ModVec>& generators() const& noexcept { return gens_; }
  std::vector<ModVec> generators() && { return std::move(gens_); }
  bool is_zero() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const ModVec& v) { return v.is_zero(); });
  }

  const detail::ModuleGB& basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    std::lock_guard lock(cache_->mutex);
    auto& slot = cache_->bases[ord.name()];
    if (!slot) {
      detail::TermArith arith{ModuleOrder(ord)};
      std::vector<detail::MPoly> gens;
      for (const auto& g : gens_) gens.push_back(arith.from_modvec(g));
      slot = std::make_shared<detail::ModuleGB>(gens, rank_, nvars_, ModuleOrder(ord));
    }
    return *slot;
  }

  std::vector<ModVec> groebner_basis(const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    std::vector<ModVec> out;
    for (const auto& g : basis(ord).elements()) out.push_back(detail::TermArith::to_modvec(g, 0, rank_, nvars_));
    return out;
  }

  ModVec reduce(const ModVec& v, const MonomialOrder& ord = MonomialOrder::grevlex()) const {
    const auto& gb = basis(ord);
    return detail::TermArith::to_modvec(gb.normal_form(gb.arith().from_modvec(v)), 0, rank_, nvars_);
  }

  bool contains(const ModVec& v) const { return reduce(v).is_zero(); }

 private:
  std::size_t rank_;
  std::size_t nvars_;
  std::vector<ModVec> gens_;
  std::shared_ptr<detail::GbCache> cache_;
};

// ---------------------------------------------------------------------------
// Normal forms and Gröbner bases

inline Poly normal_form(const Poly& f, const Ideal& I, const MonomialOrder& ord = MonomialOrder::grevlex()) {
  return I.reduce(f, ord);
}

inline ModVec normal_form(const ModVec& v, const SubModule& M, const MonomialOrder& ord = MonomialOrder::grevlex()) {
  return M.reduce(v, ord);
}

/// Reduced Gröbner basis of (gens) under `ord`, ascending by leading term.
inline std::vector<Poly> buchberger(std::span<const Poly> gens, const MonomialOrder& ord = MonomialOrder::grevlex()) {
  if (gens.empty()) throw InputError("buchberger: empty generator list");
  Ideal I(VarRing::indexed("x", gens.front().nvars()), std::vector<Poly>(gens.begin(), gens.end()));
  return I.groebner_basis(ord);
}

struct GbWithCofactors {
  std::vector<Poly> basis;
  /// basis[i] = sum_j cofactors[i][j] * gens[j]
  std::vector<std::vector<Poly>> cofactors;
};

inline GbWithCofactors gb_with_cofactors(std::span<const Poly> gens,
                                         const MonomialOrder& ord = MonomialOrder::grevlex()) {
  if (gens.empty()) throw InputError("gb_with_cofactors: empty generator list");
  const std::size_t n = gens.front().nvars();
  Ideal I(VarRing::indexed("x", n), std::vector<Poly>(gens.begin(), gens.end()));
  TrackedBasis tracked(detail::as_vectors(gens), 1, n, ord);
  GbWithCofactors out;
  out.basis = I.groebner_basis(ord);
  for (const auto& g : out.basis) {
    auto row = tracked.lift(ModVec(std::vector<Poly>{g}));
    if (!row) throw Error("gb_with_cofactors: basis element failed to lift");
    out.cofactors.push_back(std::move(*row));
  }
  return out;
}

struct MembershipResult {
  bool member = false;
  /// f = sum_j witness[j] * generators[j] when member.
  std::optional<std::vector<Poly>> witness;
};

inline MembershipResult ideal_membership(const Poly& f, const Ideal& I) {
  if (!I.contains(f)) return {};
  auto w = I.tracked().lift(ModVec(std::vector<Poly>{f}));
  if (!w) throw Error("ideal_membership: normal form vanished but lift failed");
  return {true, std::move(w)};
}

// ---------------------------------------------------------------------------
// Elimination

/// I ∩ J as the t-free part of (t*I + (1-t)*J) under an elimination order.
inline Ideal ideal_intersection(const Ideal& I, const Ideal& J) {
  if (!(I.ring() == J.ring())) throw InputError("ideal_intersection: ideals live in different rings");
  const std::size_t n = I.nvars();
  const Poly t = Poly::variable(n + 1, 0);
  const Poly one_minus_t = Poly::constant(n + 1, Rational(1)) - t;
  std::vector<Poly> gens;
  for (const auto& f : I.nonzero_generators()) gens.push_back(t * f.embed(n + 1, 1));
  for (const auto& g : J.nonzero_generators()) gens.push_back(one_minus_t * g.embed(n + 1, 1));
  if (gens.empty()) return Ideal::zero(I.ring());
  Ideal big(I.ring().prepended({I.ring().fresh_name("t")}), gens);
  std::vector<Poly> out;
  for (const auto& g : big.groebner_basis(MonomialOrder::elimination(1)))
    if (g.is_free_of(0)) out.push_back(g.project(1, n));
  if (out.empty()) return Ideal::zero(I.ring());
  return Ideal(I.ring(), std::move(out));
}

/// Kernel of k[x1..xk] -> target, x_i |-> images[i], by eliminating the
/// target variables from the graph ideal (x_i - images[i]).
inline Ideal ring_map_kernel(std::span<const Poly> images, const VarRing& target,
                             std::optional<VarRing> source = std::nullopt) {
  const std::size_t m = target.size();
  const std::size_t k = images.size();
  VarRing src = source ? *source : VarRing::indexed("x", k);
  if (src.size() != k) throw InputError("ring_map_kernel: source ring arity differs from image count");
  for (const auto& u : images)
    if (u.nvars() != m) throw InputError("ring_map_kernel: image outside the target ring");
  if (k == 0) return Ideal::zero(src);
  std::vector<std::string> names = target.names();
  for (const auto& s : src.names()) names.push_back(target.index_of(s) ? target.fresh_name(s) : s);
  VarRing graph_ring(names);
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(Poly::variable(m + k, m + i) - images[i].embed(m + k, 0));
  Ideal graph(graph_ring, gens);
  std::vector<Poly> out;
  for (const auto& g : graph.groebner_basis(MonomialOrder::elimination(m))) {
    bool free = true;
    for (std::size_t v = 0; v < m && free; ++v) free = g.is_free_of(v);
    if (free) out.push_back(g.project(m, k));
  }
  if (out.empty()) return Ideal::zero(src);
  return Ideal(src, std::move(out));
}

// ---------------------------------------------------------------------------
// Syzygies and kernels

namespace detail {

inline void dedupe_sorted(std::vector<ModVec>& vs) {
  std::erase_if(vs, [](const ModVec& v) { return v.is_zero(); });
  for (auto& v : vs) v = v.primitive();
  std::sort(vs.begin(), vs.end(), [](const ModVec& a, const ModVec& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return structural_compare(a, b) < 0;
  });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

inline std::vector<ModVec> ideal_multiples(const Ideal& I, std::size_t rank) {
  std::vector<ModVec> out;
  for (const auto& f : I.nonzero_generators())
    for (std::size_t i = 0; i < rank; ++i) {
      ModVec v(rank, I.nvars());
      v[i] = f;
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace detail

/// Generators S of { s : sum_i s_i * vectors[i] = 0 }.
inline SubModule syzygies(const std::vector<ModVec>& vectors, std::size_t nvars) {
  if (vectors.empty()) return SubModule(0, nvars);
  TrackedBasis tracked(vectors, vectors.front().rank(), nvars);
  auto gens = tracked.syzygies();
  detail::dedupe_sorted(gens);
  return SubModule(vectors.size(), nvars, std::move(gens));
}

/// { v in P^q : M v = 0 }, the syzygies of the columns of M.
inline SubModule matrix_kernel(const PolyMatrix& M) {
  if (M.cols() == 0) return SubModule(0, M.nvars());
  if (M.rows() == 0) {
    std::vector<ModVec> units;
    for (std::size_t j = 0; j < M.cols(); ++j) units.push_back(ModVec::unit(M.cols(), M.nvars(), j));
    return SubModule(M.cols(), M.nvars(), std::move(units));
  }
  return syzygies(M.columns(), M.nvars());
}

/// { v in P^q : M v ∈ I·P^p }, i.e. the kernel of M over A = P/I, with
/// generators that are multiples of I dropped.
inline SubModule kernel_over_quotient(const PolyMatrix& M, const Ideal& I) {
  const std::size_t q = M.cols();
  if (q == 0) return SubModule(0, M.nvars());
  if (M.rows() == 0) return matrix_kernel(M);
  std::vector<ModVec> cols = M.columns();
  for (auto& v : detail::ideal_multiples(I, M.rows())) cols.push_back(std::move(v));
  TrackedBasis tracked(cols, M.rows(), M.nvars());
  SubModule trivial(q, M.nvars(), detail::ideal_multiples(I, q));
  std::vector<ModVec> out;
  for (const auto& s : tracked.syzygies()) {
    std::vector<Poly> head(s.entries().begin(), s.entries().begin() + static_cast<std::ptrdiff_t>(q));
    ModVec v(std::move(head));
    if (!trivial.contains(v)) out.push_back(std::move(v));
  }
  detail::dedupe_sorted(out);
  return SubModule(q, M.nvars(), std::move(out));
}

/// U + I·P^m as a submodule.
inline SubModule with_ideal(const SubModule& U, const Ideal& I) {
  std::vector<ModVec> gens = U.generators();
  for (auto& v : detail::ideal_multiples(I, U.rank())) gens.push_back(std::move(v));
  return SubModule(U.rank(), U.nvars(), std::move(gens));
}

/// Mutual containment of U and V modulo I·P^m.
inline bool module_equal(const SubModule& U, const SubModule& V, const Ideal& I) {
  if (U.rank() != V.rank()) throw InputError("module_equal: rank mismatch");
  const SubModule VI = with_ideal(V, I);
  for (const auto& u : U.generators())
    if (!VI.contains(u)) return false;
  const SubModule UI = with_ideal(U, I);
  for (const auto& v : V.generators())
    if (!UI.contains(v)) return false;
  return true;
}

/// Writes vectors as P-combinations of a fixed generator list modulo I·P^m.
/// Building one of these once and querying it repeatedly avoids recomputing
/// the tracked basis.
class GeneratorExpander {
 public:
  GeneratorExpander(std::vector<ModVec> gens, std::size_t rank, const Ideal& I)
      : count_(gens.size()), rank_(rank), ideal_(I) {
    for (auto& v : detail::ideal_multiples(I, rank)) gens.push_back(std::move(v));
    tracked_ = std::make_shared<TrackedBasis>(std::move(gens), rank, I.nvars());
  }

  /// c with v ≡ sum_k c_k gens_k (mod I·P^m), or nullopt when v is outside
  /// the span.
  std::optional<std::vector<Poly>> express(const ModVec& v) const {
    auto full = tracked_->lift(v);
    if (!full) return std::nullopt;
    full->resize(count_);
    return full;
  }

  std::size_t generator_count() const noexcept { return count_; }

 private:
  std::size_t count_;
  std::size_t rank_;
  Ideal ideal_;
  std::shared_ptr<TrackedBasis> tracked_;
};

inline std::optional<std::vector<Poly>> express_in_generators(const ModVec& v, const std::vector<ModVec>& gens,
                                                              const Ideal& I) {
  return GeneratorExpander(gens, v.rank(), I).express(v);
}

}  // namespace poissym
