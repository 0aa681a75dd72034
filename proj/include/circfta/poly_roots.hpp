#pragma once

/**
 * @file poly_roots.hpp
 * @brief All complex roots of a monic polynomial, and their grouping into
 *        distinct roots with multiplicities.
 *
 * Roots come from a simultaneous Aberth-Ehrlich iteration (no deflation).
 * Floating-point copies of a multiple root scatter by roughly
 * eps^(1/multiplicity), so distinctness is decided by single-linkage
 * clustering under a caller-supplied tolerance.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circfta/circulant.hpp"
#include "circfta/error.hpp"
#include "circfta/scalar.hpp"

namespace circfta {

/// x^n + b_1 x^{n-1} + ... + b_n. The leading 1 is implicit.
class MonicPolynomial {
 public:
  explicit MonicPolynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(Errc::InvalidDimension, "monic polynomial needs degree >= 1");
    detail::require_finite(coeffs_, "monic polynomial");
  }

  MonicPolynomial(std::initializer_list<Scalar> coeffs)
      : MonicPolynomial(std::vector<Scalar>(coeffs)) {}

  std::size_t degree() const noexcept { return coeffs_.size(); }

  /// (b_1, ..., b_n).
  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }

  /// max(1, max |b_k|).
  double scale() const noexcept {
    double m = 1.0;
    for (const auto& b : coeffs_) m = std::max(m, std::abs(b));
    return m;
  }

  friend bool operator==(const MonicPolynomial&, const MonicPolynomial&) = default;

 private:
  std::vector<Scalar> coeffs_;
};

inline Scalar poly_eval(const MonicPolynomial& p, const Scalar& x) {
  Scalar acc = 1.0;
  for (const auto& b : p.coeffs()) acc = acc * x + b;
  if (!is_finite(acc)) throw Error(Errc::NonFiniteInput, "polynomial value overflowed");
  return acc;
}

struct DistinctRoot {
  Scalar root;
  std::size_t multiplicity;
};

struct RootSet {
  std::vector<Scalar> all_roots;       // with multiplicity, find_roots order
  std::vector<DistinctRoot> distinct;  // cluster representatives
  double tol_used = 0.0;
  // Smallest distance between members of different clusters (+inf for one cluster).
  double min_gap = std::numeric_limits<double>::infinity();
  // Largest distance between two members of the same cluster.
  double max_spread = 0.0;

  std::size_t distinct_count() const noexcept { return distinct.size(); }
};

namespace detail {

struct SlopeAndBound {
  Scalar slope;
  double magnitude_bound;  // the polynomial with |coefficients| evaluated at |x|
};

inline SlopeAndBound slope_and_bound(std::span<const Scalar> coeffs, const Scalar& x) {
  Scalar value = 1.0;
  Scalar slope = 0.0;
  const double ax = std::abs(x);
  double bound = 1.0;
  for (const auto& b : coeffs) {
    slope = slope * x + value;
    value = value * x + b;
    bound = bound * ax + std::abs(b);
  }
  return {slope, bound};
}

// Error-free transformations: a + b = s + e and a * b = p + e exactly.
inline std::pair<double, double> two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double z = s - a;
  return {s, (a - (s - z)) + (b - z)};
}

inline std::pair<double, double> two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

// Compensated Horner over complex doubles: the result is as accurate as plain
// Horner run in twice the working precision, then rounded. Near a cluster of
// m coincident roots this shrinks the scatter from eps^(1/m) to eps^(2/m).
inline Scalar compensated_horner(std::span<const Scalar> coeffs, const Scalar& x) {
  double sr = 1.0, si = 0.0;  // running value
  Scalar carry = 0.0;         // accumulated rounding errors
  const double xr = x.real(), xi = x.imag();
  for (const auto& b : coeffs) {
    const auto [p1, h1] = two_prod(sr, xr);
    const auto [p2, h2] = two_prod(si, xi);
    const auto [p3, h3] = two_prod(sr, xi);
    const auto [p4, h4] = two_prod(si, xr);
    const auto [pr, h5] = two_sum(p1, -p2);
    const auto [pi, h6] = two_sum(p3, p4);
    const auto [nr, h7] = two_sum(pr, b.real());
    const auto [ni, h8] = two_sum(pi, b.imag());
    const Scalar err{h1 - h2 + h5 + h7, h3 + h4 + h6 + h8};
    carry = carry * x + err;
    sr = nr;
    si = ni;
  }
  return Scalar{sr, si} + carry;
}

// Deterministic ordering: real part, then imaginary part, then original index.
inline void sort_roots(std::vector<Scalar>& roots) {
  std::vector<std::size_t> order(roots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (roots[a].real() != roots[b].real()) return roots[a].real() < roots[b].real();
    return roots[a].imag() < roots[b].imag();
  });
  std::vector<Scalar> sorted;
  sorted.reserve(roots.size());
  for (auto k : order) sorted.push_back(roots[k]);
  roots = std::move(sorted);
}

}  // namespace detail

inline constexpr std::size_t kDefaultMaxIters = 200;
inline constexpr double kDefaultConvTol = 1e-12;
inline constexpr double kDefaultDistinctTol = 1e-8;

/// All n roots of p, with multiplicity, sorted by (real, imag).
///
/// Sweeps stop once every approximation is settled: a sweep moved it by less
/// than conv_tol * (1 + |z|), or |p(z)| fell to the rounding level of the
/// compensated Horner evaluation at z. Otherwise they stop after max_iters.
/// Copies of a multiple root may keep drifting inside the cluster until the
/// cap, so the cap alone is not a failure: NoConvergence is thrown when some
/// returned root has |p(z)| > conv_tol * scale(p).
inline std::vector<Scalar> find_roots(const MonicPolynomial& p,
                                      std::size_t max_iters = kDefaultMaxIters,
                                      double conv_tol = kDefaultConvTol) {
  if (!(conv_tol > 0.0)) throw Error(Errc::ValidationError, "conv_tol must be positive");
  if (max_iters == 0) throw Error(Errc::ValidationError, "max_iters must be positive");

  const std::size_t n = p.degree();
  const auto coeffs = p.coeffs();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Rounding level of the compensated evaluation, relative to the
  // absolute-coefficient polynomial at |z|.
  const double noise_floor = [&] {
    const double g = 4.0 * static_cast<double>(n) * eps;
    return g * g;
  }();

  double radius = 1.0;
  for (const auto& b : coeffs) radius = std::max(radius, 1.0 + std::abs(b));

  std::vector<Scalar> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = (2.0 * std::numbers::pi * static_cast<double>(k) + 0.5) /
                         static_cast<double>(n);
    z[k] = std::polar(radius, angle);
  }

  std::vector<bool> settled(n, false);
  std::size_t remaining = n;
  for (std::size_t iter = 0; iter < max_iters && remaining > 0; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      if (settled[k]) continue;
      const Scalar value = detail::compensated_horner(coeffs, z[k]);
      const auto [slope, bound] = detail::slope_and_bound(coeffs, z[k]);
      if (std::abs(value) <= noise_floor * bound) {
        settled[k] = true;
        --remaining;
        continue;
      }
      Scalar repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const Scalar diff = z[k] - z[j];
        if (diff != Scalar(0.0)) repulsion += 1.0 / diff;
      }
      // Aberth correction N / (1 - N * sum 1/(z_k - z_j)), with N = p / p'.
      const Scalar denom = slope - value * repulsion;
      if (denom == Scalar(0.0)) continue;
      const Scalar step = value / denom;
      if (!is_finite(step)) continue;
      z[k] -= step;
      if (std::abs(step) < conv_tol * (1.0 + std::abs(z[k]))) {
        settled[k] = true;
        --remaining;
      }
    }
  }

  std::vector<double> residuals(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    residuals[k] = std::abs(detail::compensated_horner(coeffs, z[k]));
    worst = std::max(worst, residuals[k]);
  }
  if (worst > conv_tol * p.scale()) {
    throw NoConvergence(std::to_string(remaining) + " of " + std::to_string(n) +
                            " roots unsettled after " + std::to_string(max_iters) +
                            " sweeps; worst residual " + std::to_string(worst) + " exceeds " +
                            std::to_string(conv_tol * p.scale()),
                        z, residuals);
  }
  detail::sort_roots(z);
  return z;
}

/// Single-linkage clustering: roots within `tol` of each other share a
/// cluster. Each cluster yields its mean with multiplicity equal to its size.
/// Clusters are ordered by their first member in the input order.
inline RootSet cluster_distinct(std::span<const Scalar> roots, double tol) {
  if (roots.empty()) throw Error(Errc::InvalidDimension, "cluster_distinct needs roots");
  if (!(tol > 0.0)) throw Error(Errc::ValidationError, "cluster tolerance must be positive");

  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(roots[a] - roots[b]) <= tol) {
        const auto ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }

  RootSet out;
  out.all_roots.assign(roots.begin(), roots.end());
  out.tol_used = tol;

  std::vector<std::size_t> slot(n, n);
  std::vector<Scalar> sums;
  for (std::size_t a = 0; a < n; ++a) {
    const auto r = find(a);
    if (slot[r] == n) {
      slot[r] = out.distinct.size();
      out.distinct.push_back({0.0, 0});
      sums.emplace_back(0.0);
    }
    sums[slot[r]] += roots[a];
    ++out.distinct[slot[r]].multiplicity;
  }
  for (std::size_t c = 0; c < out.distinct.size(); ++c)
    out.distinct[c].root = sums[c] / static_cast<double>(out.distinct[c].multiplicity);

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double dist = std::abs(roots[a] - roots[b]);
      if (find(a) == find(b))
        out.max_spread = std::max(out.max_spread, dist);
      else
        out.min_gap = std::min(out.min_gap, dist);
    }
  return out;
}

/// Default distinctness tolerance: rel_tol * (1 + max |root|).
inline double distinct_tolerance(std::span<const Scalar> roots,
                                 double rel_tol = kDefaultDistinctTol) noexcept {
  double m = 0.0;
  for (const auto& z : roots) m = std::max(m, std::abs(z));
  return rel_tol * (1.0 + m);
}

}  // namespace circfta
