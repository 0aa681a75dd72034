#pragma once

/**
 * @file spectral.hpp
 * @brief Roots of unity, the Vandermonde/DFT matrix S, and the eigenvalue map.
 *
 * With s_{i,j} = r_{(i-1)(j-1)} and S^{-1} = d^{-1} conj(S), conjugation
 * S A S^{-1} is diagonal for every circulant A, with
 *
 *     v_i = sum_{j=1..d} a_{j-1} conj(r)_{(i-1)(j-1)}.
 *
 * Storage is 0-based: v[i] uses exponent i * j for the 0-based (i, j).
 */

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <span>
#include <vector>

#include "circfta/circulant.hpp"
#include "circfta/error.hpp"
#include "circfta/scalar.hpp"

namespace circfta {

/// Table of r_k = exp(i 2 pi k / d) and conjugates; indices wrap mod d.
class RootsOfUnity {
 public:
  explicit RootsOfUnity(std::size_t d) : d_(d) {
    detail::require_dimension(d, "roots_of_unity");
    r_.resize(d);
    r_conj_.resize(d);
    for (std::size_t k = 0; k < d; ++k) r_[k] = unit_root(k, d);
    for (std::size_t k = 0; k < d; ++k) r_conj_[k] = std::conj(r_[k]);
  }

  std::size_t dim() const noexcept { return d_; }

  Scalar r(long long k) const noexcept { return r_[wrap(k)]; }
  Scalar r_conj(long long k) const noexcept { return r_conj_[wrap(k)]; }

  std::span<const Scalar> table() const noexcept { return r_; }
  std::span<const Scalar> conj_table() const noexcept { return r_conj_; }

 private:
  std::size_t wrap(long long k) const noexcept {
    const auto d = static_cast<long long>(d_);
    return static_cast<std::size_t>(((k % d) + d) % d);
  }

  // Quarter turns are exact and r_{d-k} = conj(r_k) holds bitwise.
  static Scalar unit_root(std::size_t k, std::size_t d) {
    if (k == 0) return {1.0, 0.0};
    if ((4 * k) % d == 0) {
      switch ((4 * k) / d) {
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        case 3: return {0.0, -1.0};
        default: break;
      }
    }
    if (2 * k > d) return std::conj(unit_root(d - k, d));
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
  }

  std::size_t d_;
  std::vector<Scalar> r_;
  std::vector<Scalar> r_conj_;
};

inline RootsOfUnity roots_of_unity(std::size_t d) { return RootsOfUnity(d); }

/// Shared read-only table per dimension; safe for concurrent readers.
inline std::shared_ptr<const RootsOfUnity> cached_roots_of_unity(std::size_t d) {
  static std::shared_mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const RootsOfUnity>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const RootsOfUnity>(d);
  std::unique_lock lock(mutex);
  return cache.emplace(d, std::move(table)).first->second;
}

/// The unnormalized Vandermonde matrix S and its inverse.
struct FourierMatrix {
  DenseMatrix s;
  DenseMatrix s_inv;

  std::size_t dim() const noexcept { return s.dim(); }
};

inline FourierMatrix fourier_matrix(std::size_t d) {
  const RootsOfUnity roots(d);
  FourierMatrix f{DenseMatrix(d), DenseMatrix(d)};
  const double inv_d = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto e = static_cast<long long>((i * j) % d);
      f.s(i, j) = roots.r(e);
      f.s_inv(i, j) = inv_d * roots.r_conj(e);
    }
  return f;
}

/// Diagonal of S A S^{-1}, in order v_1, ..., v_d.
struct EigenvalueVector {
  std::vector<Scalar> v;

  std::size_t dim() const noexcept { return v.size(); }
  const Scalar& operator[](std::size_t i) const noexcept { return v[i]; }
};

inline EigenvalueVector eigenvalues(const Circulant& a) {
  const std::size_t d = a.dim();
  const auto roots = cached_roots_of_unity(d);
  const auto conj_table = roots->conj_table();
  const auto row = a.first_row();
  EigenvalueVector out{std::vector<Scalar>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    Scalar sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) sum += row[j] * conj_table[(i * j) % d];
    out.v[i] = sum;
  }
  detail::require_finite(out.v, "eigenvalues");
  return out;
}

/// Inverse of eigenvalues(): a_{j-1} = d^{-1} sum_i v_i r_{(i-1)(j-1)}.
inline Circulant circulant_from_eigenvalues(std::span<const Scalar> v) {
  const std::size_t d = v.size();
  detail::require_dimension(d, "circulant_from_eigenvalues");
  detail::require_finite(v, "circulant_from_eigenvalues");
  const auto roots = cached_roots_of_unity(d);
  const auto table = roots->table();
  const double inv_d = 1.0 / static_cast<double>(d);
  std::vector<Scalar> row(d);
  for (std::size_t j = 0; j < d; ++j) {
    Scalar sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) sum += v[i] * table[(i * j) % d];
    row[j] = inv_d * sum;
  }
  return Circulant(std::move(row));
}

inline Circulant circulant_from_eigenvalues(const EigenvalueVector& v) {
  return circulant_from_eigenvalues(std::span<const Scalar>(v.v));
}

/// Largest off-diagonal magnitude of the dense conjugation S A S^{-1}.
inline double conjugate_check(const Circulant& a) {
  const FourierMatrix f = fourier_matrix(a.dim());
  const DenseMatrix conj = f.s * a.to_dense() * f.s_inv;
  double worst = 0.0;
  for (std::size_t i = 0; i < conj.dim(); ++i)
    for (std::size_t j = 0; j < conj.dim(); ++j)
      if (i != j) worst = std::max(worst, std::abs(conj(i, j)));
  return worst;
}

}  // namespace circfta
