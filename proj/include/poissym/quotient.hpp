#pragma once

// Quotients of a polynomial ring by a finite linear group: invariants, the
// Hilbert map to the quotient variety, Γ-invariant vector fields and their
// push-forward, and the symplectic form induced on the quotient.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "poissym/certificate.hpp"
#include "poissym/derham.hpp"
#include "poissym/errors.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/poisson.hpp"
#include "poissym/tangent.hpp"

namespace poissym {

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

inline RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix out(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  RationalMatrix out(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

/// Gauss-Jordan inverse; nullopt for a singular matrix.
inline std::optional<RationalMatrix> mat_inverse(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// All monomials of total degree d, largest first in grevlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  Monomial m(nvars);
  auto rec = [&](auto&& self, std::size_t v, std::uint32_t left) -> void {
    if (v + 1 == nvars) {
      m[v] = left;
      out.push_back(m);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      m[v] = e;
      self(self, v + 1, left - e);
    }
  };
  rec(rec, 0, d);
  const auto ord = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; });
  return out;
}

/// Incremental row echelon form over ℚ for vectors with sparse
/// (position, monomial) coordinates.
class LinearSpan {
 public:
  using Key = std::pair<std::size_t, Monomial>;
  using Vector = std::map<Key, Rational>;

  static Vector coordinates(const ModVec& v) {
    Vector out;
    for (std::size_t i = 0; i < v.rank(); ++i)
      for (const auto& t : v[i].terms()) out[{i, t.mono}] = t.coeff;
    return out;
  }

  bool contains(Vector v) const { return reduce(v).empty(); }

  /// Adds v; false when it was already in the span.
  bool add(Vector v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    pivots_.push_back(v.begin()->first);
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  Vector reduce(Vector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto it = v.find(pivots_[r]);
      if (it == v.end()) continue;
      const Rational f = it->second / rows_[r].at(pivots_[r]);
      for (const auto& [k, c] : rows_[r]) {
        Rational& slot = v[k];
        slot -= f * c;
        if (slot == 0) v.erase(k);
      }
    }
    return v;
  }

  std::vector<Vector> rows_;
  std::vector<Key> pivots_;
};

}  // namespace detail

/// A finite subgroup of GL_n(ℚ) acting linearly on the variables of a
/// ring: the matrix A sends the coordinate vector z to A·z.
class FiniteGroupRep {
 public:
  static constexpr std::size_t default_cap = 10000;

  FiniteGroupRep(VarRing ring, std::vector<RationalMatrix> generators, std::size_t cap = default_cap)
      : ring_(std::move(ring)), generators_(std::move(generators)) {
    const std::size_t n = ring_.size();
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      const auto& A = generators_[g];
      if (A.size() != n || std::any_of(A.begin(), A.end(), [&](const auto& row) { return row.size() != n; }))
        throw InputError("group generator " + std::to_string(g + 1) + " is not " + std::to_string(n) + "x" +
                         std::to_string(n));
      if (!detail::mat_inverse(A)) throw InputError("group generator " + std::to_string(g + 1) + " is singular");
    }
    std::set<RationalMatrix> seen;
    elements_.push_back(detail::identity_matrix(n));
    seen.insert(elements_.front());
    for (std::size_t k = 0; k < elements_.size(); ++k)
      for (const auto& A : generators_) {
        RationalMatrix next = detail::mat_mul(A, elements_[k]);
        if (seen.contains(next)) continue;
        if (elements_.size() >= cap)
          throw ResourceError("group closure exceeded " + std::to_string(cap) + " elements");
        seen.insert(next);
        elements_.push_back(std::move(next));
      }
    for (const auto& A : elements_) inverses_.push_back(*detail::mat_inverse(A));
  }

  static FiniteGroupRep trivial(VarRing ring) { return FiniteGroupRep(std::move(ring), {}); }

  const VarRing& ring() const noexcept { return ring_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<RationalMatrix>& generators() const noexcept { return generators_; }
  /// Identity first, then breadth-first in the generators.
  const std::vector<RationalMatrix>& elements() const noexcept { return elements_; }

  /// z |-> f(A z).
  Poly act(const RationalMatrix& A, const Poly& f) const { return f.substitute(linear_images(A)); }

  /// z |-> A⁻¹ X(A z), the transported field.
  ModVec act(const RationalMatrix& A, const RationalMatrix& Ainv, const ModVec& X) const {
    const std::size_t n = ring_.size();
    const auto images = linear_images(A);
    std::vector<Poly> moved;
    for (std::size_t j = 0; j < n; ++j) moved.push_back(X[j].substitute(images));
    std::vector<Poly> out(n, Poly(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (Ainv[i][j] != 0) out[i] += moved[j] * Ainv[i][j];
    return ModVec(std::move(out));
  }

  bool is_invariant(const Poly& f) const {
    return std::all_of(generators_.begin(), generators_.end(), [&](const auto& A) { return act(A, f) == f; });
  }

  bool is_invariant(const ModVec& X) const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const auto& A) { return act(A, *detail::mat_inverse(A), X) == X; });
  }

  Poly reynolds(const Poly& f) const {
    Poly sum(ring_.size());
    for (const auto& A : elements_) sum += act(A, f);
    return sum * make_rational(1, static_cast<long>(order()));
  }

  ModVec reynolds(const ModVec& X) const {
    ModVec sum(ring_.size(), ring_.size());
    for (std::size_t k = 0; k < elements_.size(); ++k) sum += act(elements_[k], inverses_[k], X);
    return make_rational(1, static_cast<long>(order())) * sum;
  }

 private:
  std::vector<Poly> linear_images(const RationalMatrix& A) const {
    const std::size_t n = ring_.size();
    std::vector<Poly> images(n, Poly(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (A[i][j] != 0) images[i] += Poly::variable(n, j) * A[i][j];
    return images;
  }

  VarRing ring_;
  std::vector<RationalMatrix> generators_;
  std::vector<RationalMatrix> elements_;
  std::vector<RationalMatrix> inverses_;
};

inline Poly reynolds(const Poly& f, const FiniteGroupRep& G) { return G.reynolds(f); }
inline ModVec reynolds(const ModVec& X, const FiniteGroupRep& G) { return G.reynolds(X); }

/// The Hilbert map R -> P, x_i |-> u_i, for invariants u_1..u_k of R, with
/// the graph ideal (x_i - u_i) kept for rewriting invariants in the x's.
struct HilbertData {
  VarRing source;
  VarRing target;
  std::vector<Poly> invariants;
  Ideal relations;
  Ideal graph;

  /// g in P with g(u) = f, or nullopt when f is not in k[u_1..u_k].
  std::optional<Poly> rewrite(const Poly& f) const {
    const std::size_t m = source.size(), k = target.size();
    const Poly r = graph.reduce(f.embed(m + k, 0), MonomialOrder::elimination(m));
    for (std::size_t v = 0; v < m; ++v)
      if (!r.is_free_of(v)) return std::nullopt;
    return r.project(m, k);
  }

  /// g(u_1..u_k) as a polynomial on the source ring.
  Poly pull_back(const Poly& g) const { return g.substitute(invariants); }
};

inline Ideal relations(std::span<const Poly> invariants, const VarRing& source, const VarRing& target) {
  return ring_map_kernel(invariants, source, target);
}

inline HilbertData hilbert_data(const VarRing& source, std::vector<Poly> invariants,
                                std::optional<VarRing> target = std::nullopt) {
  const std::size_t m = source.size(), k = invariants.size();
  VarRing tgt = target ? *target : VarRing::indexed("x", k);
  if (tgt.size() != k) throw InputError("hilbert_data: target ring arity differs from the number of invariants");
  for (const auto& u : invariants)
    if (u.nvars() != m) throw InputError("hilbert_data: invariant outside the source ring");
  std::vector<std::string> names = source.names();
  for (const auto& s : tgt.names()) names.push_back(source.index_of(s) ? source.fresh_name(s + "_") : s);
  VarRing graph_ring(names);
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(Poly::variable(m + k, m + i) - invariants[i].embed(m + k, 0));
  Ideal rel = k == 0 ? Ideal::zero(tgt) : relations(invariants, source, tgt);
  Ideal graph = gens.empty() ? Ideal::zero(graph_ring) : Ideal(graph_ring, std::move(gens));
  return HilbertData{source, std::move(tgt), std::move(invariants), std::move(rel), std::move(graph)};
}

/// Greedy generators of R^Γ: for each degree up to `degree_bound` (the
/// group order by default, Noether's bound), Reynolds images of monomials
/// not already in the subalgebra generated so far.
inline std::vector<Poly> fundamental_invariants(const FiniteGroupRep& G,
                                                std::optional<std::uint32_t> degree_bound = std::nullopt) {
  const std::size_t n = G.ring().size();
  const auto bound = degree_bound ? *degree_bound : static_cast<std::uint32_t>(G.order());
  std::vector<Poly> out;
  std::optional<HilbertData> current;
  for (std::uint32_t d = 1; d <= bound; ++d)
    for (const auto& m : detail::monomials_of_degree(n, d)) {
      Poly f = G.reynolds(Poly::monomial(m, Rational(1)));
      if (f.is_zero()) continue;
      f = f.primitive();
      if (current && current->rewrite(f)) continue;
      out.push_back(std::move(f));
      current = hilbert_data(G.ring(), out);
    }
  return out;
}

/// Checks a user-chosen invariant system: every element is Γ-invariant and
/// the greedy generators up to `degree_bound` lie in the subalgebra.
inline void validate_invariants(const FiniteGroupRep& G, const std::vector<Poly>& invariants,
                                std::optional<std::uint32_t> degree_bound = std::nullopt) {
  for (std::size_t i = 0; i < invariants.size(); ++i)
    if (!G.is_invariant(invariants[i]))
      throw InputError("invariant " + std::to_string(i + 1) + " (" + canonical_string(invariants[i], G.ring()) +
                       ") is not fixed by the group");
  const HilbertData H = hilbert_data(G.ring(), invariants);
  for (const auto& f : fundamental_invariants(G, degree_bound))
    if (!H.rewrite(f))
      throw InputError("the given invariants do not generate " + canonical_string(f, G.ring()));
}

/// Generators of the R^Γ-module of Γ-invariant vector fields with
/// coefficients of degree at most `degree_bound` (group order by default).
/// Candidates are averaged monomial fields, kept when they are not a
/// ℚ-combination of invariant multiples of earlier generators.
inline std::vector<ModVec> invariant_derivations(const FiniteGroupRep& G,
                                                 std::optional<std::uint32_t> degree_bound = std::nullopt) {
  const std::size_t n = G.ring().size();
  const auto bound = degree_bound ? *degree_bound : static_cast<std::uint32_t>(G.order());

  // ℚ-bases of the invariants of each degree
  std::vector<std::vector<Poly>> inv_basis(bound + 1);
  for (std::uint32_t d = 0; d <= bound; ++d) {
    detail::LinearSpan span;
    for (const auto& m : detail::monomials_of_degree(n, d)) {
      Poly f = G.reynolds(Poly::monomial(m, Rational(1)));
      if (span.add(detail::LinearSpan::coordinates(ModVec({f})))) inv_basis[d].push_back(f.primitive());
    }
  }

  std::vector<ModVec> out;
  std::vector<std::uint32_t> degrees;
  for (std::uint32_t e = 0; e <= bound; ++e) {
    detail::LinearSpan span;
    for (std::size_t k = 0; k < out.size(); ++k)
      for (const auto& r : inv_basis[e - degrees[k]]) span.add(detail::LinearSpan::coordinates(r * out[k]));
    for (const auto& m : detail::monomials_of_degree(n, e))
      for (std::size_t j = 0; j < n; ++j) {
        ModVec Y = G.reynolds(Poly::monomial(m, Rational(1)) * ModVec::unit(n, n, j));
        if (Y.is_zero() || !span.add(detail::LinearSpan::coordinates(Y))) continue;
        out.push_back(Y.primitive());
        degrees.push_back(e);
      }
  }
  return out;
}

/// The field on the quotient induced by a Γ-invariant field X: its i-th
/// entry is X(u_i) rewritten in the x's.
inline ModVec push_derivation(const ModVec& X, const HilbertData& H) {
  const std::size_t k = H.target.size();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < k; ++i) {
    auto r = H.rewrite(apply_field(X, H.invariants[i]));
    if (!r)
      throw InputError("push_derivation: " + canonical_string(X, H.source) + " applied to " +
                       canonical_string(H.invariants[i], H.source) + " is not a polynomial in the invariants");
    out.push_back(std::move(*r));
  }
  return k == 0 ? ModVec(0, 0) : ModVec(std::move(out));
}

/// {x_i, x_j} = rewrite of {u_i, u_j} on the source ring.
inline PoissonStructure induced_poisson(const HilbertData& H, const PoissonStructure& ambient) {
  const std::size_t k = H.target.size();
  PolyMatrix m(k, k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto r = H.rewrite(bracket(H.invariants[i], H.invariants[j], ambient));
      if (!r) throw InputError("the bracket of two invariants is not invariant");
      m.at(i, j) = *r;
      m.at(j, i) = -*r;
    }
  return PoissonStructure(H.target, std::move(m));
}

/// Presentation of Der(A), A = P/relations, on the pushed fields Y1..Ym.
inline DerPresentation pushed_presentation(const HilbertData& H, std::vector<ModVec> pushed,
                                           std::optional<PoissonStructure> pi = std::nullopt) {
  const std::size_t k = H.target.size();
  DerPresentation out;
  out.ideal = H.relations;
  out.poisson = std::move(pi);
  for (std::size_t i = 0; i < pushed.size(); ++i) {
    out.labels.push_back({GeneratorLabel::Kind::extra, std::nullopt});
    out.names.push_back("Y" + std::to_string(i + 1));
  }
  out.generators = std::move(pushed);
  out.relations = out.generators.empty() ? SubModule(0, k) : kernel_over_quotient(out.generator_matrix(), H.relations);
  out.expander_ = std::make_shared<GeneratorExpander>(out.generators, k, H.relations);
  return out;
}

/// The constant symplectic form ω0 = Π⁻¹ on the source ring, so that
/// ω0(H_f, X) = X(f).
inline RationalMatrix symplectic_inverse(const PoissonStructure& ambient) {
  if (!ambient.is_constant()) throw InputError("the ambient Poisson structure is not constant");
  const std::size_t n = ambient.nvars();
  RationalMatrix pi(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pi[i][j] = ambient.entry(i, j).constant_term();
  auto inv = detail::mat_inverse(pi);
  if (!inv) throw InputError("the ambient Poisson structure is degenerate");
  return *inv;
}

/// The Gram matrix of the induced form on the pushed generators:
/// entry (i, j) is ω0(X_i, X_j) rewritten in the x's.
inline GramForm pushed_symplectic(const HilbertData& H, const PoissonStructure& ambient,
                                  const std::vector<ModVec>& upstairs) {
  const RationalMatrix W = symplectic_inverse(ambient);
  const std::size_t n = H.source.size(), k = H.target.size(), m = upstairs.size();
  std::vector<ModVec> pushed;
  for (const auto& X : upstairs) pushed.push_back(push_derivation(X, H));
  PolyMatrix gram(m, m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Poly w(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (W[a][b] != 0) w += (upstairs[i][a] * upstairs[j][b]) * W[a][b];
      auto r = H.rewrite(w);
      if (!r) throw InputError("omega0(" + canonical_string(upstairs[i], H.source) + ", " +
                               canonical_string(upstairs[j], H.source) + ") is not invariant");
      gram.at(i, j) = std::move(*r);
    }
  return GramForm{pushed_presentation(H, std::move(pushed), induced_poisson(H, ambient)), std::move(gram)};
}

namespace detail {

/// Σ c_k(u) X_k on the source ring.
inline ModVec lift_combination(const HilbertData& H, const std::vector<ModVec>& upstairs, const ModVec& c) {
  const std::size_t n = H.source.size();
  ModVec out(n, n);
  for (std::size_t k = 0; k < upstairs.size(); ++k)
    if (!c[k].is_zero()) out += H.pull_back(c[k]) * upstairs[k];
  return out;
}

inline Certificate source_certificate(std::string kind, const VarRing& source) {
  Certificate c;
  c.kind = std::move(kind);
  c.ring = source;
  return c;
}

inline void settle_exact(Certificate& c) {
  c.passed = std::all_of(c.evidence.begin(), c.evidence.end(), [](const Evidence& e) { return e.residual.is_zero(); });
}

}  // namespace detail

/// Every relation among the pushed fields modulo I already holds for the
/// invariant fields upstairs, so the push-forward is injective on
/// Der(R)^Γ. Residuals live on the source ring and must vanish exactly.
inline Certificate injectivity_check(const HilbertData& H, const std::vector<ModVec>& upstairs,
                                     const DerPresentation& pushed) {
  Certificate cert = detail::source_certificate("injectivity", H.source);
  const auto& rels = pushed.relations.generators();
  for (std::size_t b = 0; b < rels.size(); ++b) {
    const ModVec lifted = detail::lift_combination(H, upstairs, rels[b]);
    for (std::size_t i = 0; i < lifted.rank(); ++i)
      cert.evidence.push_back(
          {"lift(rel[" + std::to_string(b) + "]) entry " + H.source.name(i), {b, i}, lifted[i]});
  }
  if (rels.empty()) cert.notes.push_back("no relations among the pushed fields");
  detail::settle_exact(cert);
  return cert;
}

/// Every tangent derivation of the quotient is a combination of the pushed
/// fields modulo I.
inline Certificate surjectivity_check(const DerPresentation& pushed) {
  const auto& I = pushed.ideal;
  const std::size_t k = I.nvars();
  Certificate cert = detail::make_certificate("surjectivity", I);
  bool complete = true;
  const SubModule span = with_ideal(SubModule(k, k, pushed.generators), I);
  const auto T = tangent_derivations(I);
  for (std::size_t a = 0; a < T.size(); ++a) {
    const std::string name = "T" + std::to_string(a + 1);
    auto c = pushed.expander().express(T[a]);
    if (!c) {
      complete = false;
      const ModVec rem = span.reduce(T[a]);
      std::size_t top = k;
      while (top > 0 && rem[top - 1].is_zero()) --top;
      cert.evidence.push_back({name + " outside the pushed fields, entry " + std::to_string(top - 1), {a, top - 1},
                               rem[top - 1]});
      cert.notes.push_back("tangent field " + canonical_string(T[a], pushed.ring()) + " is not pushed forward");
      continue;
    }
    ModVec diff = T[a];
    for (std::size_t b = 0; b < pushed.size(); ++b)
      if (!(*c)[b].is_zero()) diff -= (*c)[b] * pushed.generators[b];
    for (std::size_t i = 0; i < k; ++i)
      cert.evidence.push_back({name + " - pushed combination, entry " + std::to_string(i), {a, i}, diff[i]});
  }
  detail::settle(cert, I);
  cert.passed = cert.passed && complete;
  return cert;
}

struct BaseChangeResult {
  /// pushed·B = target generators and Bᵀ·ω·B = target Gram, modulo I.
  Certificate downstairs;
  /// B·(target relations), lifted to the source ring, vanishes exactly.
  Certificate upstairs;

  bool passed() const noexcept { return downstairs.passed && upstairs.passed; }
};

/// Checks a constant change of generators B (m x g) from the pushed fields
/// to another presentation of the same Der(A).
inline BaseChangeResult verify_base_change(const HilbertData& H, const std::vector<ModVec>& upstairs,
                                           const GramForm& pushed, const RationalMatrix& B, const GramForm& target) {
  const auto& I = pushed.presentation.ideal;
  const std::size_t k = I.nvars(), m = pushed.presentation.size(), g = target.presentation.size();
  if (B.size() != m || std::any_of(B.begin(), B.end(), [&](const auto& row) { return row.size() != g; }))
    throw InputError("base change must be " + std::to_string(m) + "x" + std::to_string(g));
  if (upstairs.size() != m) throw InputError("base change: upstairs fields and pushed fields disagree");

  PolyMatrix Bp(m, g, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < g; ++j) Bp.at(i, j) = Poly::constant(k, B[i][j]);

  BaseChangeResult out{detail::make_certificate("base_change", I), detail::source_certificate("base_change_lift", H.source)};
  const PolyMatrix moved = pushed.presentation.generator_matrix() * Bp;
  const PolyMatrix G = target.presentation.generator_matrix();
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t i = 0; i < k; ++i)
      out.downstairs.evidence.push_back({"(pushed*B - generators)[" + std::to_string(i) + "][" +
                                             target.presentation.names[j] + "]",
                                         {i, j},
                                         moved.at(i, j) - G.at(i, j)});
  const PolyMatrix gram = Bp.transpose() * pushed.gram * Bp;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      out.downstairs.evidence.push_back({"(B^T*omega*B - omega)" + detail::tuple_name(target.presentation, std::vector<std::size_t>{i, j}),
                                         {i, j},
                                         gram.at(i, j) - target.gram.at(i, j)});
  detail::settle(out.downstairs, I);

  const auto& rels = target.presentation.relations.generators();
  for (std::size_t b = 0; b < rels.size(); ++b) {
    const ModVec lifted = detail::lift_combination(H, upstairs, Bp * rels[b]);
    for (std::size_t i = 0; i < lifted.rank(); ++i)
      out.upstairs.evidence.push_back(
          {"lift(B*rel[" + std::to_string(b) + "]) entry " + H.source.name(i), {b, i}, lifted[i]});
  }
  if (rels.empty()) out.upstairs.notes.push_back("the target presentation has no relations");
  detail::settle_exact(out.upstairs);
  return out;
}

}  // namespace poissym
