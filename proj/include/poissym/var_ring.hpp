#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "poissym/errors.hpp"
#include "poissym/poly.hpp"

namespace poissym {

/// Ordered variable names of a polynomial ring k[x1, ..., xn], with an
/// optional positive weight per variable (reporting only).
class VarRing {
 public:
  VarRing() = default;

  explicit VarRing(std::vector<std::string> names, std::vector<unsigned> weights = {})
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (weights_.empty()) weights_.assign(names_.size(), 1);
    if (weights_.size() != names_.size()) throw InputError("ring: one weight per variable required");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (!valid_identifier(n)) throw InputError("ring: invalid variable name '" + n + "'");
      if (!seen.insert(n).second) throw InputError("ring: duplicate variable name '" + n + "'");
    }
    for (auto w : weights_)
      if (w == 0) throw InputError("ring: weights must be positive");
  }

  /// prefix1, ..., prefixN
  static VarRing indexed(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return VarRing(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<unsigned>& weights() const noexcept { return weights_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  Poly var(std::size_t i) const { return Poly::variable(size(), i); }
  Poly var(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw InputError("unknown variable '" + std::string(name) + "'");
    return var(*i);
  }
  Poly constant(const Rational& c) const { return Poly::constant(size(), c); }
  Poly zero() const { return Poly(size()); }

  std::uint64_t weighted_degree(const Monomial& m) const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += std::uint64_t{weights_[i]} * m[i];
    return d;
  }

  /// Ring whose variables are `front` followed by this ring's variables.
  VarRing prepended(const std::vector<std::string>& front) const {
    std::vector<std::string> names = front;
    names.insert(names.end(), names_.begin(), names_.end());
    std::vector<unsigned> weights(front.size(), 1);
    weights.insert(weights.end(), weights_.begin(), weights_.end());
    return VarRing(std::move(names), std::move(weights));
  }

  /// Concatenation `this` then `back`.
  VarRing appended(const VarRing& back) const {
    std::vector<std::string> names = names_;
    names.insert(names.end(), back.names_.begin(), back.names_.end());
    std::vector<unsigned> weights = weights_;
    weights.insert(weights.end(), back.weights_.begin(), back.weights_.end());
    return VarRing(std::move(names), std::move(weights));
  }

  /// A variable name not used by this ring, derived from `stem`.
  std::string fresh_name(const std::string& stem) const {
    std::string candidate = stem;
    for (int k = 0; index_of(candidate); ++k) candidate = stem + "_" + std::to_string(k);
    return candidate;
  }

  static bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
  }

  friend bool operator==(const VarRing& a, const VarRing& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::vector<unsigned> weights_;
};

}  // namespace poissym
