#pragma once

// Tangential derivations Der_I(P) = {X in Der(P) | X(I) ⊆ I} and finite
// presentations of Der(A) ≃ Der_I(P) / I·Der(P) for A = P/I.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poissym/errors.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/poisson.hpp"

namespace poissym {

/// (df/dx^1, ..., df/dx^n); the zero ideal when f is constant.
inline Ideal jacobian_ideal(const Poly& f, const VarRing& ring) {
  if (f.nvars() != ring.size()) throw InputError("jacobian_ideal: polynomial outside the ring");
  std::vector<Poly> partials;
  for (std::size_t j = 0; j < ring.size(); ++j)
    if (Poly d = f.derivative(j); !d.is_zero()) partials.push_back(std::move(d));
  if (partials.empty()) return Ideal::zero(ring);
  return Ideal(ring, std::move(partials));
}

/// The k x (k+n) matrix whose r-th row is [f_1 ... f_k | grad f_r].
inline PolyMatrix build_M(const Ideal& I) {
  const auto& fs = I.generators();
  if (fs.empty()) throw InputError("build_M: the ideal has no generators");
  const std::size_t k = fs.size(), n = I.nvars();
  PolyMatrix M(k, k + n, n);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t nu = 0; nu < k; ++nu) M.at(r, nu) = fs[nu];
    for (std::size_t j = 0; j < n; ++j) M.at(r, k + j) = fs[r].derivative(j);
  }
  return M;
}

/// k x n matrix of partial derivatives of the ideal generators.
inline PolyMatrix jacobian_matrix(const std::vector<Poly>& fs, std::size_t nvars) {
  PolyMatrix J(fs.size(), nvars, nvars);
  for (std::size_t r = 0; r < fs.size(); ++r)
    for (std::size_t j = 0; j < nvars; ++j) J.at(r, j) = fs[r].derivative(j);
  return J;
}

namespace detail {

inline void reject_degenerate(const Ideal& I) {
  if (I.generators().empty()) throw InputError("the ideal has no generators; write 0 for the zero ideal");
  for (const auto& f : I.generators())
    if (f.is_constant() && !f.is_zero())
      throw InputError("ideal generator " + canonical_string(f, I.ring()) +
                       " is a non-zero constant, so A = P/I is the zero ring");
}

/// Degree first, then the entrywise canonical rendering.
inline void sort_fields(std::vector<ModVec>& fields, const VarRing& ring) {
  std::vector<std::pair<std::string, ModVec>> keyed;
  for (auto& v : fields) keyed.emplace_back(canonical_string(v, ring), std::move(v));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const auto da = a.second.degree(), db = b.second.degree();
    if (da != db) return da < db;
    return a.first < b.first;
  });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  fields.clear();
  for (auto& kv : keyed) fields.push_back(std::move(kv.second));
}

}  // namespace detail

/// Generators of Der_I(P) modulo I·Der(P): the fields X with
/// X(f_r) ∈ I for every generator f_r. Each row r of the Jacobian matrix
/// gets its own cofactors, so the result is complete for any number of
/// generators. Elements of I·P^n are left out; they are implied.
inline std::vector<ModVec> tangent_derivations(const Ideal& I) {
  detail::reject_degenerate(I);
  const std::size_t n = I.nvars();
  const SubModule K = kernel_over_quotient(jacobian_matrix(I.generators(), n), I);
  std::vector<ModVec> out;
  for (const auto& v : K.generators())
    if (!v.is_zero()) out.push_back(v.primitive());
  detail::sort_fields(out, I.ring());
  return out;
}

/// Ann_f(P) = {X | X(f_r) = 0 for all r} = ∩_r Syz(Jac_{f_r}).
inline SubModule annihilator_fields(const std::vector<Poly>& fs, const VarRing& ring) {
  const std::size_t n = ring.size();
  if (fs.empty()) {
    std::vector<ModVec> units;
    for (std::size_t j = 0; j < n; ++j) units.push_back(ModVec::unit(n, n, j));
    return SubModule(n, n, std::move(units));
  }
  return matrix_kernel(jacobian_matrix(fs, n));
}

/// Image of the musical map on the coordinate differentials.
struct SharpImage {
  std::vector<ModVec> fields;
};

inline SharpImage sharp_image(const PoissonStructure& pi) {
  SharpImage out;
  for (std::size_t i = 0; i < pi.nvars(); ++i) out.fields.push_back(hamiltonian_field(pi.ring().var(i), pi));
  return out;
}

struct GeneratorLabel {
  enum class Kind { hamiltonian, extra };
  Kind kind = Kind::extra;
  /// The Hamiltonian function a of H_a; unset for extras.
  std::optional<Poly> function;

  bool is_hamiltonian() const noexcept { return kind == Kind::hamiltonian; }
};

/// Der(A) presented on a generator list: the module is
/// span(generators) / (relations + I·P^g), with relations read in P^g.
struct DerPresentation {
  Ideal ideal;
  std::vector<ModVec> generators;
  std::vector<GeneratorLabel> labels;
  SubModule relations{0, 0};
  std::optional<PoissonStructure> poisson;
  /// Display names: H[a] for Hamiltonian generators, X<k> (1-based
  /// position) for extras.
  std::vector<std::string> names;

  const VarRing& ring() const noexcept { return ideal.ring(); }
  std::size_t size() const noexcept { return generators.size(); }

  std::size_t extra_count() const {
    return static_cast<std::size_t>(
        std::count_if(labels.begin(), labels.end(), [](const GeneratorLabel& l) { return !l.is_hamiltonian(); }));
  }

  /// Expansions of fields in the generators modulo I·P^n.
  const GeneratorExpander& expander() const { return *expander_; }

  /// n x g matrix with the generators as columns.
  PolyMatrix generator_matrix() const { return PolyMatrix::from_columns(generators, ring().size(), ring().size()); }

  std::shared_ptr<const GeneratorExpander> expander_;
};

/// Raised when der_presentation is given a Poisson structure for which the
/// ideal is not a Poisson ideal.
class NotPoissonIdeal : public InputError {
 public:
  using InputError::InputError;
};

/// Presentation of Der(A). With a Poisson structure the Hamiltonian fields
/// H_{x^i} come first (those vanishing mod I·P^n are skipped), followed by
/// the tangential generators not already in their span.
inline DerPresentation der_presentation(const Ideal& I, const std::optional<PoissonStructure>& pi = std::nullopt) {
  detail::reject_degenerate(I);
  const VarRing& ring = I.ring();
  const std::size_t n = ring.size();
  if (pi) {
    if (!(pi->ring() == ring)) throw InputError("der_presentation: Poisson structure lives in a different ring");
    auto check = poisson_ideal_check(I, *pi);
    if (!check.is_poisson) {
      const auto [i, mu] = *check.failure;
      throw NotPoissonIdeal("not a Poisson ideal: {" + ring.name(i) + ", " +
                            canonical_string(I.generators()[mu], ring) + "} = " +
                            canonical_string(*check.failing_bracket, ring) + " is not in the ideal");
    }
  }

  DerPresentation out;
  out.ideal = I;
  out.poisson = pi;
  const SubModule trivial(n, n, detail::ideal_multiples(I, n));
  std::vector<ModVec> span_gens = trivial.generators();
  auto in_span = [&](const ModVec& v) { return SubModule(n, n, span_gens).contains(v); };

  if (pi) {
    for (std::size_t i = 0; i < n; ++i) {
      ModVec h = hamiltonian_field(ring.var(i), *pi);
      if (trivial.contains(h)) continue;
      out.generators.push_back(h);
      out.labels.push_back({GeneratorLabel::Kind::hamiltonian, ring.var(i)});
      out.names.push_back("H[" + ring.name(i) + "]");
      span_gens.push_back(std::move(h));
    }
  }
  for (auto& X : tangent_derivations(I)) {
    if (in_span(X)) continue;
    out.generators.push_back(X);
    out.labels.push_back({GeneratorLabel::Kind::extra, std::nullopt});
    out.names.push_back("X" + std::to_string(out.generators.size()));
    span_gens.push_back(std::move(X));
  }

  const PolyMatrix G = out.generator_matrix();
  out.relations = out.generators.empty() ? SubModule(0, n) : kernel_over_quotient(G, I);
  out.expander_ = std::make_shared<GeneratorExpander>(out.generators, n, I);
  return out;
}

}  // namespace poissym
