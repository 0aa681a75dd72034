#pragma once

/**
 * @file circulant.hpp
 * @brief The commutative ring of d x d complex circulant matrices.
 *
 * A circulant is stored by its first row (a_0, ..., a_{d-1}); the dense
 * matrix has entry (i, j) = a_{(j - i) mod d}. Products are cyclic
 * convolutions of first rows, so every operation here costs O(d) or O(d^2)
 * and never touches a d x d grid. DenseMatrix exists for oracles and display.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "circfta/error.hpp"
#include "circfta/scalar.hpp"

namespace circfta {

namespace detail {

inline void require_finite(std::span<const Scalar> values, const char* context) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!is_finite(values[k])) {
      throw Error(Errc::NonFiniteInput,
                  std::string(context) + ": entry " + std::to_string(k) + " is not finite");
    }
  }
}

inline void require_dimension(std::size_t d, const char* context) {
  if (d == 0) throw Error(Errc::InvalidDimension, std::string(context) + ": dimension must be >= 1");
}

}  // namespace detail

/// Square complex matrix, row-major. Only used as a verification surface.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t d) : d_(d), entries_(d * d) {
    detail::require_dimension(d, "DenseMatrix");
  }

  std::size_t dim() const noexcept { return d_; }

  Scalar& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * d_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * d_ + j];
  }

  std::span<const Scalar> entries() const noexcept { return entries_; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.d_ != y.d_) throw Error(Errc::DimensionMismatch, "dense product");
    DenseMatrix out(x.d_);
    for (std::size_t i = 0; i < x.d_; ++i)
      for (std::size_t k = 0; k < x.d_; ++k) {
        const Scalar xik = x(i, k);
        for (std::size_t j = 0; j < x.d_; ++j) out(i, j) += xik * y(k, j);
      }
    return out;
  }

  double frobenius_norm() const noexcept {
    double sum = 0.0;
    for (const auto& z : entries_) sum += std::norm(z);
    return std::sqrt(sum);
  }

 private:
  std::size_t d_;
  std::vector<Scalar> entries_;
};

/// Circulant matrix circ(a_0, ..., a_{d-1}). Immutable once built; all
/// entries finite.
class Circulant {
 public:
  /// Throws InvalidDimension on an empty row, NonFiniteInput on NaN/Inf.
  explicit Circulant(std::vector<Scalar> first_row) : row_(std::move(first_row)) {
    detail::require_dimension(row_.size(), "circulant");
    detail::require_finite(row_, "circulant");
  }

  Circulant(std::initializer_list<Scalar> first_row)
      : Circulant(std::vector<Scalar>(first_row)) {}

  static Circulant zero(std::size_t d) {
    detail::require_dimension(d, "zero");
    return Circulant(std::vector<Scalar>(d));
  }

  static Circulant identity(std::size_t d) {
    detail::require_dimension(d, "identity");
    std::vector<Scalar> row(d);
    row[0] = 1.0;
    return Circulant(std::move(row));
  }

  /// Cyclic shift C = circ(0, 1, 0, ..., 0); C = circ(1) when d = 1.
  static Circulant generator(std::size_t d) {
    detail::require_dimension(d, "generator");
    std::vector<Scalar> row(d);
    row[d == 1 ? 0 : 1] = 1.0;
    return Circulant(std::move(row));
  }

  std::size_t dim() const noexcept { return row_.size(); }
  std::span<const Scalar> first_row() const noexcept { return row_; }

  /// a_k with k taken mod d.
  const Scalar& operator[](std::size_t k) const noexcept { return row_[k % row_.size()]; }

  DenseMatrix to_dense() const {
    const std::size_t d = dim();
    DenseMatrix out(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out(i, j) = row_[(j + d - i) % d];
    return out;
  }

  /// sqrt(d * sum |a_j|^2): each first-row entry appears d times in the dense form.
  double frobenius_norm() const noexcept {
    double sum = 0.0;
    for (const auto& z : row_) sum += std::norm(z);
    return std::sqrt(static_cast<double>(dim()) * sum);
  }

  double max_abs_entry() const noexcept {
    double m = 0.0;
    for (const auto& z : row_) m = std::max(m, std::abs(z));
    return m;
  }

  friend bool operator==(const Circulant&, const Circulant&) = default;

  friend Circulant operator+(const Circulant& x, const Circulant& y) {
    check_same_dim(x, y, "circulant sum");
    std::vector<Scalar> row(x.dim());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = x.row_[k] + y.row_[k];
    return Circulant(std::move(row));
  }

  friend Circulant operator-(const Circulant& x, const Circulant& y) {
    check_same_dim(x, y, "circulant difference");
    std::vector<Scalar> row(x.dim());
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = x.row_[k] - y.row_[k];
    return Circulant(std::move(row));
  }

  /// Cyclic convolution c_k = sum_i a_i b_{(k - i) mod d}.
  friend Circulant operator*(const Circulant& x, const Circulant& y) {
    check_same_dim(x, y, "circulant product");
    const std::size_t d = x.dim();
    std::vector<Scalar> row(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Scalar ai = x.row_[i];
      for (std::size_t j = 0; j < d; ++j) row[(i + j) % d] += ai * y.row_[j];
    }
    return Circulant(std::move(row));
  }

  friend Circulant operator*(const Scalar& s, const Circulant& x) {
    std::vector<Scalar> row(x.row_);
    for (auto& z : row) z *= s;
    return Circulant(std::move(row));
  }

 private:
  static void check_same_dim(const Circulant& x, const Circulant& y, const char* context) {
    if (x.dim() != y.dim()) {
      throw Error(Errc::DimensionMismatch, std::string(context) + ": " + std::to_string(x.dim()) +
                                               " vs " + std::to_string(y.dim()));
    }
  }

  std::vector<Scalar> row_;
};

inline Circulant circ_add(const Circulant& x, const Circulant& y) { return x + y; }
inline Circulant circ_mul(const Circulant& x, const Circulant& y) { return x * y; }
inline Circulant circ_scale(const Circulant& x, const Scalar& s) { return s * x; }

/// x^k by square-and-multiply; x^0 is the identity.
inline Circulant circ_pow(const Circulant& x, unsigned long long k) {
  Circulant result = Circulant::identity(x.dim());
  Circulant base = x;
  while (k > 0) {
    if (k & 1ULL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

/// X^n + A_1 X^{n-1} + ... + A_n, accumulated as (((X + A_1) X + A_2) X + ...) + A_n.
inline Circulant eval_matrix_poly(std::span<const Circulant> coeffs, const Circulant& x) {
  if (coeffs.empty()) throw Error(Errc::InvalidDimension, "matrix polynomial needs degree >= 1");
  Circulant acc = x + coeffs[0];
  for (std::size_t k = 1; k < coeffs.size(); ++k) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace circfta
