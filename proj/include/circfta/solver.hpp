#pragma once

/**
 * @file solver.hpp
 * @brief All circulant solutions X of X^n + A_1 X^{n-1} + ... + A_n = O.
 *
 * Conjugating by S turns every coefficient A_k into diag(b_k^(1..d)), where
 * b_k^(i) is the i-th eigenvalue of A_k. The matrix equation then splits
 * into d independent scalar equations
 *
 *     u^n + b_1^(i) u^{n-1} + ... + b_n^(i) = 0,   i = 1..d,
 *
 * and each choice (u_1, ..., u_d) of one distinct root per equation gives
 * exactly one solution X = circulant_from_eigenvalues(u). The number of
 * solutions is therefore prod_i n_i, where n_i counts distinct roots of the
 * i-th equation; it never exceeds n^d and reaches it exactly when every
 * scalar equation has n distinct roots.
 */

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circfta/circulant.hpp"
#include "circfta/error.hpp"
#include "circfta/poly_roots.hpp"
#include "circfta/spectral.hpp"

namespace circfta {

/// Coefficients A_1..A_n of a monic circulant matrix equation.
class EquationInput {
 public:
  explicit EquationInput(std::vector<Circulant> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(Errc::InvalidDimension, "equation needs degree n >= 1");
    const std::size_t d = coeffs_.front().dim();
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      if (coeffs_[k].dim() != d) {
        throw Error(Errc::DimensionMismatch, "coefficient A_" + std::to_string(k + 1) + " has dimension " +
                                                 std::to_string(coeffs_[k].dim()) + ", expected " +
                                                 std::to_string(d));
      }
    }
  }

  std::size_t dim() const noexcept { return coeffs_.front().dim(); }
  std::size_t degree() const noexcept { return coeffs_.size(); }
  std::span<const Circulant> coeffs() const noexcept { return coeffs_; }

  /// (1 + max |a_{k,j}|)^n, the residual acceptance scale.
  double scale() const noexcept {
    double m = 0.0;
    for (const auto& a : coeffs_) m = std::max(m, a.max_abs_entry());
    return std::pow(1.0 + m, static_cast<double>(degree()));
  }

 private:
  std::vector<Circulant> coeffs_;
};

struct SolverConfig {
  double conv_tol = kDefaultConvTol;
  /// Relative: roots closer than distinct_tol * (1 + max |root|) coincide.
  double distinct_tol = kDefaultDistinctTol;
  double residual_tol = 1e-8;
  std::size_t max_iters = kDefaultMaxIters;
  std::uint64_t max_enumerated = 1'000'000;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw Error(Errc::ValidationError, std::string(name) + " must be positive and finite");
    };
    positive(conv_tol, "conv_tol");
    positive(distinct_tol, "distinct_tol");
    positive(residual_tol, "residual_tol");
    if (max_iters == 0) throw Error(Errc::ValidationError, "max_iters must be positive");
    if (max_enumerated == 0) throw Error(Errc::ValidationError, "max_enumerated must be positive");
  }
};

/// The d decoupled scalar equations; polys[i] holds (b_1^(i+1), ..., b_n^(i+1)).
struct SpectralSystem {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<MonicPolynomial> polys;
};

inline SpectralSystem spectral_reduce(const EquationInput& eq) {
  const std::size_t d = eq.dim();
  const std::size_t n = eq.degree();
  std::vector<std::vector<Scalar>> rows(d, std::vector<Scalar>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const EigenvalueVector v = eigenvalues(eq.coeffs()[k]);
    for (std::size_t i = 0; i < d; ++i) rows[i][k] = v[i];
  }
  SpectralSystem sys{d, n, {}};
  sys.polys.reserve(d);
  for (auto& row : rows) sys.polys.emplace_back(std::move(row));
  return sys;
}

namespace detail {

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::nullopt;
  return a * b;
}

}  // namespace detail

/// n^d, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> solution_bound(std::size_t n, std::size_t d) noexcept {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < d; ++i) {
    auto next = detail::checked_mul(acc, n);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

inline std::uint64_t product_of_counts(std::span<const std::size_t> per_equation) {
  std::uint64_t acc = 1;
  for (auto c : per_equation) {
    auto next = detail::checked_mul(acc, c);
    if (!next) throw Error(Errc::CountOverflow, "solution count exceeds 2^64 - 1");
    acc = *next;
  }
  return acc;
}

struct Solution {
  std::vector<std::size_t> selection;  // index into root_sets[i].distinct, per i
  Circulant x;
  double residual;
};

struct VerifyResult {
  bool ok;
  double residual;
};

/// Frobenius norm of the equation's left-hand side at x, tested against
/// residual_tol * eq.scale().
inline VerifyResult verify_solution(const EquationInput& eq, const Circulant& x,
                                    double residual_tol) {
  if (x.dim() != eq.dim()) {
    throw Error(Errc::DimensionMismatch, "candidate has dimension " + std::to_string(x.dim()) +
                                             ", equation has " + std::to_string(eq.dim()));
  }
  const double residual = eval_matrix_poly(eq.coeffs(), x).frobenius_norm();
  return {residual <= residual_tol * eq.scale(), residual};
}

class SolutionCursor;

struct Enumeration {
  std::vector<Solution> solutions;
  bool truncated = false;
};

/// Distinct roots of every scalar equation plus the exact solution count.
/// Solutions themselves are produced on demand by cursor().
class SolutionSet {
 public:
  SolutionSet(EquationInput eq, SolverConfig cfg, std::vector<RootSet> root_sets)
      : eq_(std::move(eq)), cfg_(cfg), root_sets_(std::move(root_sets)) {
    per_equation_.reserve(root_sets_.size());
    for (const auto& rs : root_sets_) per_equation_.push_back(rs.distinct_count());
    count_ = product_of_counts(per_equation_);
  }

  const EquationInput& equation() const noexcept { return eq_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  std::span<const RootSet> root_sets() const noexcept { return root_sets_; }
  std::span<const std::size_t> per_equation() const noexcept { return per_equation_; }
  std::uint64_t count() const noexcept { return count_; }

  /// Largest residual an emitted solution may carry.
  double residual_bound() const noexcept { return cfg_.residual_tol * eq_.scale(); }

  /// Builds the solution for one selection of distinct roots.
  Solution build(std::span<const std::size_t> selection) const {
    std::vector<Scalar> u(root_sets_.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = root_sets_[i].distinct.at(selection[i]).root;
    Circulant x = circulant_from_eigenvalues(u);
    const double residual = eval_matrix_poly(eq_.coeffs(), x).frobenius_norm();
    return {std::vector<std::size_t>(selection.begin(), selection.end()), std::move(x), residual};
  }

  inline SolutionCursor cursor(bool enforce_residual = true) const;
  inline Enumeration materialize() const;

 private:
  EquationInput eq_;
  SolverConfig cfg_;
  std::vector<RootSet> root_sets_;
  std::vector<std::size_t> per_equation_;
  std::uint64_t count_ = 0;
};

/// Walks the Cartesian product of distinct roots in lexicographic order of
/// selection indices (equation 1 varies slowest), stopping after
/// max_enumerated solutions. Throws ResidualExceeded on a solution above the
/// acceptance bound unless constructed with enforce_residual = false.
class SolutionCursor {
 public:
  SolutionCursor(const SolutionSet& set, bool enforce_residual)
      : set_(&set), selection_(set.per_equation().size(), 0), enforce_(enforce_residual) {}

  std::optional<Solution> next() {
    if (exhausted_) return std::nullopt;
    if (emitted_ == set_->count()) {
      exhausted_ = true;
      return std::nullopt;
    }
    if (emitted_ == set_->config().max_enumerated) {
      exhausted_ = true;
      truncated_ = true;
      return std::nullopt;
    }
    Solution s = set_->build(selection_);
    if (enforce_ && s.residual > set_->residual_bound()) {
      exhausted_ = true;
      throw ResidualExceeded("solution residual " + std::to_string(s.residual) +
                                 " exceeds acceptance bound " +
                                 std::to_string(set_->residual_bound()),
                             s.selection, s.residual, set_->residual_bound());
    }
    ++emitted_;
    advance();
    return s;
  }

  std::uint64_t emitted() const noexcept { return emitted_; }
  /// True once the cursor stopped at the enumeration cap with solutions left.
  bool truncated() const noexcept { return truncated_; }

 private:
  void advance() {
    const auto sizes = set_->per_equation();
    for (std::size_t i = selection_.size(); i-- > 0;) {
      if (++selection_[i] < sizes[i]) return;
      selection_[i] = 0;
    }
  }

  const SolutionSet* set_;
  std::vector<std::size_t> selection_;
  bool enforce_;
  std::uint64_t emitted_ = 0;
  bool exhausted_ = false;
  bool truncated_ = false;
};

inline SolutionCursor SolutionSet::cursor(bool enforce_residual) const {
  return SolutionCursor(*this, enforce_residual);
}

inline Enumeration SolutionSet::materialize() const {
  Enumeration out;
  auto c = cursor();
  while (auto s = c.next()) out.solutions.push_back(std::move(*s));
  out.truncated = c.truncated();
  return out;
}

/// Distinct roots of one scalar equation under the configured tolerances.
inline RootSet solve_scalar(const MonicPolynomial& p, const SolverConfig& cfg) {
  const auto roots = find_roots(p, cfg.max_iters, cfg.conv_tol);
  return cluster_distinct(roots, distinct_tolerance(roots, cfg.distinct_tol));
}

inline std::vector<RootSet> solve_spectral_system(const SpectralSystem& sys,
                                                  const SolverConfig& cfg) {
  std::vector<RootSet> sets;
  sets.reserve(sys.d);
  for (std::size_t i = 0; i < sys.d; ++i) {
    try {
      sets.push_back(solve_scalar(sys.polys[i], cfg));
    } catch (const NoConvergence& e) {
      throw NoConvergence(e.detail(), e.best_iterate(), e.residuals(), i);
    }
  }
  return sets;
}

inline SolutionSet solve_all(const EquationInput& eq, const SolverConfig& cfg = {}) {
  cfg.validate();
  return SolutionSet(eq, cfg, solve_spectral_system(spectral_reduce(eq), cfg));
}

struct SolutionCount {
  std::uint64_t count;
  std::vector<std::size_t> per_equation;
};

inline SolutionCount count_solutions(const EquationInput& eq, const SolverConfig& cfg = {}) {
  cfg.validate();
  const auto sets = solve_spectral_system(spectral_reduce(eq), cfg);
  SolutionCount out{0, {}};
  for (const auto& rs : sets) out.per_equation.push_back(rs.distinct_count());
  out.count = product_of_counts(out.per_equation);
  return out;
}

// -- certification -----------------------------------------------------------

struct TheoremCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::string> witnesses;
};

/// Per-equation clustering statistics, so borderline distinctness decisions
/// can be audited.
struct ClusterGap {
  std::size_t distinct = 0;
  double tol_used = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  double max_spread = 0.0;
};

struct CertificationReport {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> bound;  // n^d when representable
  std::vector<std::size_t> per_equation;
  std::vector<ClusterGap> gaps;
  std::uint64_t verified = 0;
  bool truncated = false;
  std::vector<TheoremCheck> checks;

  bool all_passed() const noexcept {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Checks existence (count >= 1), the n^d bound, the product law, the
/// attainment biconditional (count = n^d iff every n_i = n), and that every
/// enumerated solution satisfies the equation. Failures list witnesses.
inline CertificationReport certify_theorems(const EquationInput& eq, const SolverConfig& cfg = {}) {
  const SolutionSet set = solve_all(eq, cfg);

  CertificationReport rep;
  rep.d = eq.dim();
  rep.n = eq.degree();
  rep.count = set.count();
  rep.bound = solution_bound(rep.n, rep.d);
  rep.per_equation.assign(set.per_equation().begin(), set.per_equation().end());
  for (const auto& rs : set.root_sets())
    rep.gaps.push_back({rs.distinct_count(), rs.tol_used, rs.min_gap, rs.max_spread});

  {
    TheoremCheck c{"existence", rep.count >= 1, "count = " + std::to_string(rep.count), {}};
    rep.checks.push_back(std::move(c));
  }
  {
    TheoremCheck c{"upper_bound", true, {}, {}};
    if (rep.bound) {
      c.passed = rep.count <= *rep.bound;
      c.detail = std::to_string(rep.count) + " <= " + std::to_string(*rep.bound);
    } else {
      c.detail = "n^d exceeds 2^64 - 1; bound holds trivially";
    }
    rep.checks.push_back(std::move(c));
  }
  {
    std::uint64_t recomputed = 1;
    for (const auto& rs : set.root_sets()) recomputed *= rs.distinct.size();
    TheoremCheck c{"product_law", recomputed == rep.count,
                   "prod n_i = " + std::to_string(recomputed), {}};
    rep.checks.push_back(std::move(c));
  }
  {
    bool all_full = true;
    TheoremCheck c{"attainment", false, {}, {}};
    for (std::size_t i = 0; i < rep.per_equation.size(); ++i) {
      if (rep.per_equation[i] != rep.n) {
        all_full = false;
        c.witnesses.push_back("equation " + std::to_string(i + 1) + ": n_i = " +
                              std::to_string(rep.per_equation[i]) + " < " + std::to_string(rep.n) +
                              ", max cluster spread " + std::to_string(rep.gaps[i].max_spread) +
                              " <= tol " + std::to_string(rep.gaps[i].tol_used));
      }
    }
    const bool attained = rep.bound && rep.count == *rep.bound;
    c.passed = attained == all_full;
    c.detail = std::string(attained ? "count = n^d" : "count < n^d") +
               (all_full ? ", all roots distinct" : ", repeated roots present");
    rep.checks.push_back(std::move(c));
  }
  {
    TheoremCheck c{"solutions_verified", true, {}, {}};
    auto cursor = set.cursor(/*enforce_residual=*/false);
    while (auto s = cursor.next()) {
      if (s->residual > set.residual_bound()) {
        c.passed = false;
        std::string sel;
        for (auto k : s->selection) sel += (sel.empty() ? "" : ",") + std::to_string(k);
        c.witnesses.push_back("selection [" + sel + "] residual " + std::to_string(s->residual));
      } else {
        ++rep.verified;
      }
    }
    rep.truncated = cursor.truncated();
    c.detail = std::to_string(rep.verified) + " of " + std::to_string(cursor.emitted()) +
               " enumerated solutions within " + std::to_string(set.residual_bound()) +
               (rep.truncated ? " (enumeration truncated)" : "");
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace circfta
