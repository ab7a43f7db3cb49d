#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "poissym/monomial.hpp"

namespace poissym {

/// Exact arbitrary-precision rational coefficient.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are stored strictly descending under grevlex with no zero
/// coefficients, so structural equality is mathematical equality. Order
/// dependent queries (leading terms, normal forms) take the order as an
/// argument; the Gröbner engine keeps its own order-sorted copies.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t index) {
    Poly p(nvars);
    p.terms_.push_back({Monomial::variable(nvars, index), Rational(1)});
    return p;
  }
  static Poly monomial(Monomial m, const Rational& c) {
    Poly p(m.size());
    if (c != 0) p.terms_.push_back({std::move(m), c});
    return p;
  }
  /// Builds a polynomial from unsorted terms, merging duplicates.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms) {
    Poly p(nvars);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
  }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// Constant coefficient.
  Rational constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Rational(0);
  }

  std::uint32_t total_degree() const noexcept {
    // grevlex-descending storage puts a maximal-degree term first
    return terms_.empty() ? 0 : terms_.front().mono.degree();
  }

  bool is_homogeneous() const noexcept {
    for (const auto& t : terms_)
      if (t.mono.degree() != total_degree()) return false;
    return true;
  }

  /// True when no term involves variable `index`.
  bool is_free_of(std::size_t index) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.mono[index] == 0; });
  }

  Poly operator-() const {
    Poly out(*this);
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  Poly& operator+=(const Poly& o) { return *this = combine(*this, o, Rational(1)); }
  Poly& operator-=(const Poly& o) { return *this = combine(*this, o, Rational(-1)); }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.coeff *= c;
    }
    return *this;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, Rational(1)); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, Rational(-1)); }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_arity(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.nvars_);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) out.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
    return from_terms(a.nvars_, std::move(out));
  }

  /// Multiplies by the monomial `c * m`.
  Poly mul_term(const Monomial& m, const Rational& c) const {
    Poly out(nvars_);
    if (c == 0) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono * m, t.coeff * c});
    return out;  // monomial multiplication preserves the term order
  }

  Poly pow(unsigned e) const {
    Poly result = constant(nvars_, Rational(1));
    Poly base = *this;
    while (e != 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e != 0) base *= base;
    }
    return result;
  }

  /// Formal partial derivative with respect to variable `index`.
  Poly derivative(std::size_t index) const {
    if (index >= nvars_) throw std::out_of_range("derivative: variable index out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.mono[index] == 0) continue;
      Monomial m = t.mono;
      Rational c = t.coeff * Rational(static_cast<unsigned long>(m[index]));
      m[index] -= 1;
      out.push_back({std::move(m), std::move(c)});
    }
    return from_terms(nvars_, std::move(out));
  }

  /// Substitutes `images[i]` for variable i. All images share one arity,
  /// which becomes the arity of the result.
  Poly substitute(std::span<const Poly> images) const {
    if (images.size() != nvars_) throw std::invalid_argument("substitute: wrong number of images");
    const std::size_t target = images.empty() ? 0 : images.front().nvars();
    Poly out(target);
    // cache powers per variable; exponents are small at desk scale
    std::vector<std::vector<Poly>> powers(nvars_);
    auto power = [&](std::size_t v, std::uint32_t e) -> const Poly& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(constant(target, Rational(1)));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
      return cache[e];
    };
    for (const auto& t : terms_) {
      Poly term = constant(target, t.coeff);
      for (std::size_t v = 0; v < nvars_; ++v)
        if (t.mono[v] != 0) term *= power(v, t.mono[v]);
      out += term;
    }
    return out;
  }

  /// Re-embeds into a ring with `new_nvars` variables, variable i mapping to
  /// variable `offset + i`.
  Poly embed(std::size_t new_nvars, std::size_t offset) const {
    if (offset + nvars_ > new_nvars) throw std::invalid_argument("embed: target ring too small");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(new_nvars);
      for (std::size_t i = 0; i < nvars_; ++i) m[offset + i] = t.mono[i];
      out.push_back({std::move(m), t.coeff});
    }
    return from_terms(new_nvars, std::move(out));
  }

  /// Inverse of `embed`: keeps variables [offset, offset+count); every other
  /// variable must be absent.
  Poly project(std::size_t offset, std::size_t count) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(count);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (i >= offset && i < offset + count) {
          m[i - offset] = t.mono[i];
        } else if (t.mono[i] != 0) {
          throw std::invalid_argument("project: polynomial involves a dropped variable");
        }
      }
      out.push_back({std::move(m), t.coeff});
    }
    return from_terms(count, std::move(out));
  }

  /// Maximal term under `ord`. Precondition: non-zero.
  const Term& leading(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
    const Term* best = &terms_.front();
    for (const auto& t : terms_)
      if (ord.greater(t.mono, best->mono)) best = &t;
    return *best;
  }

  /// Scales to integer coefficients with content 1 and a positive leading
  /// (grevlex) coefficient. Zero stays zero.
  Poly primitive() const {
    if (terms_.empty()) return *this;
    mpz_class den = 1, num = 0;
    for (const auto& t : terms_) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
    Rational scale(den, num);
    scale.canonicalize();
    if (terms_.front().coeff < 0) scale = -scale;
    return *this * scale;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Three-way comparison usable for deterministic sorting.
  friend int structural_compare(const Poly& a, const Poly& b) {
    static constexpr MonomialOrder ord = MonomialOrder::grevlex();
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (int c = ord.compare(a.terms_[i].mono, b.terms_[i].mono); c != 0) return c;
      if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff ? -1 : 1;
    }
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
    return 0;
  }

 private:
  static void check_arity(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomials live in rings of different arity");
  }

  static bool desc(const Term& a, const Term& b) {
    static constexpr MonomialOrder ord = MonomialOrder::grevlex();
    return ord.greater(a.mono, b.mono);
  }

  void normalize() {
    for (const auto& t : terms_)
      if (t.mono.size() != nvars_) throw std::invalid_argument("term arity mismatch");
    std::sort(terms_.begin(), terms_.end(), desc);
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono) {
        merged.back().coeff += t.coeff;
      } else {
        if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
        merged.push_back(std::move(t));
      }
    }
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
    terms_ = std::move(merged);
  }

  static Poly combine(const Poly& a, const Poly& b, const Rational& sign) {
    check_arity(a, b);
    static constexpr MonomialOrder ord = MonomialOrder::grevlex();
    Poly out(a.nvars_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c = i == a.terms_.size()   ? -1
              : j == b.terms_.size() ? 1
                                     : ord.compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        out.terms_.push_back({b.terms_[j].mono, b.terms_[j].coeff * sign});
        ++j;
      } else {
        Rational s = a.terms_[i].coeff + sign * b.terms_[j].coeff;
        if (s != 0) out.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace poissym
