#pragma once

// Poisson structures on P = k[x1..xn], given by the bivector
// Pi^{ij} = {x^i, x^j}, together with Hamiltonian vector fields and the
// Lie bracket of vector fields.
//
// Sign convention: {a, } is the derivation b |-> {a, b}, so
// hamiltonian_field(a) has j-th entry {a, x^j}.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "poissym/errors.hpp"
#include "poissym/gbengine.hpp"

namespace poissym {

/// Outcome of checking the Jacobi identity on coordinate triples.
struct JacobiResult {
  bool holds = true;
  /// First triple i<j<k (0-based) whose cyclic sum is non-zero.
  std::optional<std::array<std::size_t, 3>> counterexample;
  /// The non-zero cyclic sum at the counterexample.
  std::optional<Poly> jacobiator;
};

class PoissonStructure {
 public:
  /// `pi` must be square of the ring's arity and antisymmetric.
  PoissonStructure(VarRing ring, PolyMatrix pi) : ring_(std::move(ring)), pi_(std::move(pi)) {
    const std::size_t n = ring_.size();
    if (pi_.rows() != n || pi_.cols() != n) throw InputError("Poisson matrix must be square of the ring's arity");
    for (std::size_t i = 0; i < n; ++i) {
      if (!pi_.at(i, i).is_zero()) throw InputError("Poisson matrix must have a zero diagonal");
      for (std::size_t j = i + 1; j < n; ++j)
        if (pi_.at(i, j) != -pi_.at(j, i)) throw InputError("Poisson matrix must be antisymmetric");
    }
    jacobi_ = compute_jacobi();
  }

  /// Builds Pi from its strictly upper-triangular entries, listed row by row:
  /// (0,1), (0,2), ..., (n-2,n-1).
  static PoissonStructure from_upper(VarRing ring, const std::vector<Poly>& upper) {
    const std::size_t n = ring.size();
    if (upper.size() != (n < 2 ? 0 : n * (n - 1) / 2)) throw InputError("wrong number of upper-triangular Poisson entries");
    PolyMatrix pi(n, n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++k) {
        pi.at(i, j) = upper[k];
        pi.at(j, i) = -upper[k];
      }
    return PoissonStructure(std::move(ring), std::move(pi));
  }

  /// Constant symplectic structure on k[q1..qd, p1..pd] with {q_i, p_i} = 1.
  static PoissonStructure canonical(VarRing ring) {
    const std::size_t n = ring.size();
    if (n % 2 != 0) throw InputError("canonical Poisson structure needs an even number of variables");
    PolyMatrix pi(n, n, n);
    for (std::size_t i = 0; i < n / 2; ++i) {
      pi.at(i, i + n / 2) = ring.constant(1);
      pi.at(i + n / 2, i) = ring.constant(-1);
    }
    return PoissonStructure(std::move(ring), std::move(pi));
  }

  const VarRing& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_.size(); }
  const PolyMatrix& matrix() const noexcept { return pi_; }
  const Poly& entry(std::size_t i, std::size_t j) const { return pi_.at(i, j); }

  /// Cached result of the Jacobi check, computed on construction.
  const JacobiResult& jacobi() const noexcept { return jacobi_; }

  bool is_constant() const {
    for (std::size_t i = 0; i < nvars(); ++i)
      for (std::size_t j = 0; j < nvars(); ++j)
        if (!pi_.at(i, j).is_constant()) return false;
    return true;
  }

 private:
  Poly coordinate_bracket(std::size_t i, const Poly& b) const {
    Poly out = ring_.zero();
    for (std::size_t j = 0; j < nvars(); ++j)
      if (!pi_.at(i, j).is_zero()) out += pi_.at(i, j) * b.derivative(j);
    return out;
  }

  JacobiResult compute_jacobi() const {
    const std::size_t n = nvars();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          Poly sum = coordinate_bracket(i, pi_.at(j, k)) + coordinate_bracket(j, pi_.at(k, i)) +
                     coordinate_bracket(k, pi_.at(i, j));
          if (!sum.is_zero()) return {false, std::array<std::size_t, 3>{i, j, k}, std::move(sum)};
        }
    return {};
  }

  VarRing ring_;
  PolyMatrix pi_;
  JacobiResult jacobi_;
};

/// {a, b} = sum_{i,j} Pi^{ij} (da/dx^i)(db/dx^j).
inline Poly bracket(const Poly& a, const Poly& b, const PoissonStructure& pi) {
  const std::size_t n = pi.nvars();
  if (a.nvars() != n || b.nvars() != n) throw InputError("bracket: polynomial outside the Poisson ring");
  Poly out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly da = a.derivative(i);
    if (da.is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (pi.entry(i, j).is_zero()) continue;
      const Poly db = b.derivative(j);
      if (!db.is_zero()) out += pi.entry(i, j) * da * db;
    }
  }
  return out;
}

inline JacobiResult jacobi_check(const PoissonStructure& pi) { return pi.jacobi(); }

/// The derivation X = sum_j X^j d/dx^j applied to a.
inline Poly apply_field(const ModVec& X, const Poly& a) {
  if (X.rank() != a.nvars()) throw InputError("apply_field: field rank differs from the number of variables");
  Poly out(a.nvars());
  for (std::size_t j = 0; j < X.rank(); ++j)
    if (!X[j].is_zero()) out += X[j] * a.derivative(j);
  return out;
}

/// H_a = {a, }, with entries {a, x^j}.
inline ModVec hamiltonian_field(const Poly& a, const PoissonStructure& pi) {
  const std::size_t n = pi.nvars();
  std::vector<Poly> entries;
  entries.reserve(n);
  for (std::size_t j = 0; j < n; ++j) entries.push_back(bracket(a, pi.ring().var(j), pi));
  return ModVec(std::move(entries));
}

/// Commutator [X, Y] of vector fields.
inline ModVec lie_bracket(const ModVec& X, const ModVec& Y) {
  if (X.rank() != Y.rank()) throw InputError("lie_bracket: rank mismatch");
  std::vector<Poly> entries;
  entries.reserve(X.rank());
  for (std::size_t j = 0; j < X.rank(); ++j) entries.push_back(apply_field(X, Y[j]) - apply_field(Y, X[j]));
  return X.rank() == 0 ? X : ModVec(std::move(entries));
}

/// Poissoffel symbols Z with {x^i, f_mu} = sum_nu Z[i][mu][nu] f_nu.
/// Indices run over the ideal's generator list as given.
struct PoissoffelWitness {
  std::vector<std::vector<std::vector<Poly>>> symbols;

  bool all_zero() const {
    for (const auto& a : symbols)
      for (const auto& b : a)
        for (const auto& c : b)
          if (!c.is_zero()) return false;
    return true;
  }
};

struct PoissonIdealResult {
  bool is_poisson = false;
  /// Filled completely when is_poisson; empty for the zero ideal.
  PoissoffelWitness witness;
  /// First (i, mu) whose bracket {x^i, f_mu} leaves the ideal.
  std::optional<std::array<std::size_t, 2>> failure;
  std::optional<Poly> failing_bracket;
};

/// Decides {I, P} ⊆ I by testing {x^i, f_mu} ∈ I for every coordinate and
/// generator, reading symbols off the membership cofactors.
inline PoissonIdealResult poisson_ideal_check(const Ideal& I, const PoissonStructure& pi) {
  if (!(I.ring() == pi.ring())) throw InputError("poisson_ideal_check: ideal and Poisson structure use different rings");
  PoissonIdealResult out;
  if (I.is_zero()) {
    out.is_poisson = true;
    return out;
  }
  const auto& gens = I.generators();
  const std::size_t n = pi.nvars();
  out.witness.symbols.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t mu = 0; mu < gens.size(); ++mu) {
      const Poly b = bracket(pi.ring().var(i), gens[mu], pi);
      auto m = ideal_membership(b, I);
      if (!m.member) {
        out.witness.symbols.clear();
        out.failure = std::array<std::size_t, 2>{i, mu};
        out.failing_bracket = b;
        return out;
      }
      out.witness.symbols[i].push_back(std::move(*m.witness));
    }
  }
  out.is_poisson = true;
  return out;
}

}  // namespace poissym
