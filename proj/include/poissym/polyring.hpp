#pragma once

#include <utility>

#include "poissym/errors.hpp"
#include "poissym/expr.hpp"
#include "poissym/monomial.hpp"
#include "poissym/poly.hpp"
#include "poissym/var_ring.hpp"

namespace poissym {

inline Poly partial_derivative(const Poly& f, std::size_t index) { return f.derivative(index); }

/// Maximal term of a non-zero polynomial under `ord`.
inline std::pair<Monomial, Rational> leading_term(const Poly& f, const MonomialOrder& ord) {
  if (f.is_zero()) throw InputError("leading_term: zero polynomial has no leading term");
  const auto& t = f.leading(ord);
  return {t.mono, t.coeff};
}

}  // namespace poissym
