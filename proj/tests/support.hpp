#pragma once

#include <random>
#include <string>
#include <vector>

#include "poissym/gbengine.hpp"

namespace poissym::testing {

inline Poly P(const VarRing& ring, const std::string& s) { return parse_poly(s, ring); }

inline ModVec V(const VarRing& ring, std::initializer_list<const char*> entries) {
  std::vector<Poly> out;
  for (const char* e : entries) out.push_back(parse_poly(e, ring));
  return ModVec(std::move(out));
}

/// Random polynomial with small integer coefficients.
class RandomPolys {
 public:
  explicit RandomPolys(unsigned seed) : rng_(seed) {}

  Poly poly(std::size_t nvars, unsigned max_degree, unsigned max_terms, int coeff_range = 5) {
    std::uniform_int_distribution<unsigned> nterms(0, max_terms);
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::vector<Poly::Term> terms;
    const unsigned k = nterms(rng_);
    for (unsigned t = 0; t < k; ++t) {
      Monomial m(nvars);
      unsigned budget = deg(rng_);
      std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
      for (unsigned b = 0; b < budget; ++b) m[var(rng_)] += 1;
      terms.push_back({m, Rational(coeff(rng_))});
    }
    return Poly::from_terms(nvars, std::move(terms));
  }

  Poly nonzero(std::size_t nvars, unsigned max_degree, unsigned max_terms) {
    for (;;) {
      Poly p = poly(nvars, max_degree, max_terms);
      if (!p.is_zero()) return p;
    }
  }

  Rational rational() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    return make_rational(num(rng_), den(rng_));
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace poissym::testing
