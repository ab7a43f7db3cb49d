#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "poissym/errors.hpp"
#include "poissym/expr.hpp"
#include "poissym/poly.hpp"

namespace poissym {

/// Element of the free module P^m. Vector fields are stored as the
/// coefficient vector of d/dx^1, ..., d/dx^n.
class ModVec {
 public:
  ModVec() = default;
  ModVec(std::size_t rank, std::size_t nvars) : entries_(rank, Poly(nvars)), nvars_(nvars) {}
  explicit ModVec(std::vector<Poly> entries) : entries_(std::move(entries)) {
    nvars_ = entries_.empty() ? 0 : entries_.front().nvars();
    for (const auto& e : entries_)
      if (e.nvars() != nvars_) throw InputError("ModVec: entries from rings of different arity");
  }

  static ModVec unit(std::size_t rank, std::size_t nvars, std::size_t index) {
    ModVec v(rank, nvars);
    v.entries_[index] = Poly::constant(nvars, Rational(1));
    return v;
  }

  std::size_t rank() const noexcept { return entries_.size(); }
  std::size_t nvars() const noexcept { return nvars_; }
  const Poly& operator[](std::size_t i) const { return entries_[i]; }
  Poly& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<Poly>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  /// Largest total degree among the entries.
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& e : entries_) d = std::max(d, e.total_degree());
    return d;
  }

  ModVec& operator+=(const ModVec& o) {
    check(o);
    for (std::size_t i = 0; i < rank(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  ModVec& operator-=(const ModVec& o) {
    check(o);
    for (std::size_t i = 0; i < rank(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  friend ModVec operator+(ModVec a, const ModVec& b) { return a += b; }
  friend ModVec operator-(ModVec a, const ModVec& b) { return a -= b; }
  ModVec operator-() const {
    ModVec out(*this);
    for (auto& e : out.entries_) e = -e;
    return out;
  }
  friend ModVec operator*(const Poly& c, const ModVec& v) {
    ModVec out(v);
    for (auto& e : out.entries_) e = c * e;
    return out;
  }
  friend ModVec operator*(const Rational& c, const ModVec& v) {
    ModVec out(v);
    for (auto& e : out.entries_) e *= c;
    return out;
  }

  /// Integer coefficients, content one, first non-zero entry with a
  /// positive leading coefficient.
  ModVec primitive() const {
    mpz_class den = 1, num = 0;
    const Poly* first = nullptr;
    for (const auto& e : entries_) {
      for (const auto& t : e.terms()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
      }
      if (!first && !e.is_zero()) first = &e;
    }
    if (!first) return *this;
    Rational scale(den, num);
    scale.canonicalize();
    if (first->terms().front().coeff < 0) scale = -scale;
    return scale * *this;
  }

  friend bool operator==(const ModVec&, const ModVec&) = default;

  friend int structural_compare(const ModVec& a, const ModVec& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank() ? -1 : 1;
    for (std::size_t i = 0; i < a.rank(); ++i)
      if (int c = structural_compare(a[i], b[i]); c != 0) return c;
    return 0;
  }

 private:
  void check(const ModVec& o) const {
    if (o.rank() != rank()) throw InputError("ModVec: rank mismatch");
  }

  std::vector<Poly> entries_;
  std::size_t nvars_ = 0;
};

/// "[e1, e2, ...]" with canonical entry strings.
inline std::string canonical_string(const ModVec& v, const VarRing& ring) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) out += ", ";
    out += canonical_string(v[i], ring);
  }
  return out + "]";
}

/// Dense row-major matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly(nvars)) {}

  static PolyMatrix from_rows(const std::vector<std::vector<Poly>>& rows, std::size_t nvars) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    PolyMatrix m(rows.size(), c, nvars);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw InputError("matrix rows of unequal length");
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static PolyMatrix from_columns(const std::vector<ModVec>& cols, std::size_t rank, std::size_t nvars) {
    PolyMatrix m(rank, cols.size(), nvars);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].rank() != rank) throw InputError("matrix columns of unequal length");
      for (std::size_t i = 0; i < rank; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nvars() const noexcept { return nvars_; }

  Poly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ModVec column(std::size_t j) const {
    std::vector<Poly> e;
    e.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) e.push_back(at(i, j));
    return rows_ == 0 ? ModVec(0, nvars_) : ModVec(std::move(e));
  }

  std::vector<ModVec> columns() const {
    std::vector<ModVec> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  ModVec operator*(const ModVec& v) const {
    if (v.rank() != cols_) throw InputError("matrix-vector product: dimension mismatch");
    ModVec out(rows_, nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] += at(i, j) * v[j];
    return out;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product: dimension mismatch");
    PolyMatrix out(a.rows_, b.cols_, a.nvars_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j)
        for (std::size_t k = 0; k < a.cols_; ++k)
          if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) out.at(i, j) += a.at(i, k) * b.at(k, j);
    return out;
  }

  PolyMatrix transpose() const {
    PolyMatrix out(cols_, rows_, nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<Poly> data_;
};

}  // namespace poissym
