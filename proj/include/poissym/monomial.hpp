#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace poissym {

/// Exponent vector of a monomial in a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : exp_(std::move(exponents)) {}
  Monomial(std::initializer_list<std::uint32_t> exponents) : exp_(exponents) {}

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exp_[index] = power;
    return m;
  }

  std::size_t size() const noexcept { return exp_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exp_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exp_; }

  std::uint32_t degree() const noexcept {
    std::uint32_t d = 0;
    for (auto e : exp_) d += e;
    return d;
  }

  bool is_one() const noexcept {
    return std::all_of(exp_.begin(), exp_.end(), [](auto e) { return e == 0; });
  }

  /// True when `*this` divides `other`.
  bool divides(const Monomial& other) const {
    assert(size() == other.size());
    for (std::size_t i = 0; i < exp_.size(); ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    assert(size() == other.size());
    Monomial out(*this);
    for (std::size_t i = 0; i < exp_.size(); ++i) out.exp_[i] += other.exp_[i];
    return out;
  }

  /// Exact quotient; `other` must divide `*this`.
  Monomial operator/(const Monomial& other) const {
    assert(other.divides(*this));
    Monomial out(*this);
    for (std::size_t i = 0; i < exp_.size(); ++i) out.exp_[i] -= other.exp_[i];
    return out;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    assert(a.size() == b.size());
    Monomial out(a);
    for (std::size_t i = 0; i < a.size(); ++i) out.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    return out;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exp_[i] != 0 && b.exp_[i] != 0) return false;
    return true;
  }

  /// Structural (lexicographic on exponent vectors) comparison; NOT a term
  /// order of any particular flavour, only used for containers.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exp_;
};

/// A term order on monomials of a fixed arity.
///
/// * `lex`         – lexicographic, x1 > x2 > ... > xn.
/// * `grevlex`     – total degree, ties broken by the reverse of the last
///                   non-zero exponent difference.
/// * `elimination` – block order: the first `block` variables compared by
///                   grevlex first, remaining variables by grevlex. Any
///                   polynomial whose leading term is free of the first block
///                   lies entirely in the subring of the remaining variables.
class MonomialOrder {
 public:
  enum class Kind { lex, grevlex, elimination };

  constexpr MonomialOrder() = default;

  static constexpr MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static constexpr MonomialOrder grevlex() { return MonomialOrder(Kind::grevlex, 0); }
  static constexpr MonomialOrder elimination(std::size_t block) {
    return MonomialOrder(Kind::elimination, block);
  }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr std::size_t block() const noexcept { return block_; }

  /// Three-way comparison: negative, zero, positive.
  int compare(const Monomial& a, const Monomial& b) const {
    assert(a.size() == b.size());
    switch (kind_) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::grevlex:
        return grevlex_range(a, b, 0, a.size());
      case Kind::elimination: {
        const std::size_t k = std::min(block_, a.size());
        if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
        return grevlex_range(a, b, k, a.size());
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::grevlex: return "grevlex";
      case Kind::elimination: return "elimination:" + std::to_string(block_);
    }
    return "?";
  }

  friend constexpr bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  constexpr MonomialOrder(Kind k, std::size_t block) : kind_(k), block_(block) {}

  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }

  Kind kind_ = Kind::grevlex;
  std::size_t block_ = 0;
};

/// Position-over-term order on module terms `m * e_pos`: positions with a
/// larger index dominate, ties are broken by the base term order.
class ModuleOrder {
 public:
  constexpr ModuleOrder() = default;
  constexpr explicit ModuleOrder(MonomialOrder base) : base_(base) {}

  constexpr const MonomialOrder& base() const noexcept { return base_; }

  int compare(std::size_t pos_a, const Monomial& a, std::size_t pos_b, const Monomial& b) const {
    if (pos_a != pos_b) return pos_a > pos_b ? 1 : -1;
    return base_.compare(a, b);
  }

 private:
  MonomialOrder base_ = MonomialOrder::grevlex();
};

}  // namespace poissym

template <>
struct std::hash<poissym::Monomial> {
  std::size_t operator()(const poissym::Monomial& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto e : m.exponents()) h = (h ^ e) * 0x100000001b3ULL;
    return h;
  }
};
