#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circfta/scalar.hpp"

namespace circfta {

enum class Errc {
  InvalidDimension,
  NonFiniteInput,
  DimensionMismatch,
  NoConvergence,
  ResidualExceeded,
  ParseError,
  ValidationError,
  CountOverflow,
};

inline const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidDimension: return "InvalidDimension";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ResidualExceeded: return "ResidualExceeded";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::CountOverflow: return "CountOverflow";
  }
  return "Unknown";
}

/// Base of every error thrown by the library. `code()` identifies the kind.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// The root iteration hit its iteration cap. Carries the last iterate and the
/// residual |p(z)| of each approximation so callers can inspect how close it got.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& detail, std::vector<Scalar> best_iterate,
                std::vector<double> residuals,
                std::optional<std::size_t> equation_index = std::nullopt)
      : Error(Errc::NoConvergence, equation_index
                                       ? detail + " (scalar equation " +
                                             std::to_string(*equation_index + 1) + ")"
                                       : detail),
        detail_(detail),
        best_iterate_(std::move(best_iterate)),
        residuals_(std::move(residuals)),
        equation_index_(equation_index) {}

  const std::string& detail() const noexcept { return detail_; }
  const std::vector<Scalar>& best_iterate() const noexcept { return best_iterate_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

  /// Zero-based index of the failing scalar equation when raised by the matrix solver.
  std::optional<std::size_t> equation_index() const noexcept { return equation_index_; }

 private:
  std::string detail_;
  std::vector<Scalar> best_iterate_;
  std::vector<double> residuals_;
  std::optional<std::size_t> equation_index_;
};

/// A reconstructed solution failed the residual acceptance bound.
class ResidualExceeded : public Error {
 public:
  ResidualExceeded(const std::string& what, std::vector<std::size_t> selection, double residual,
                   double bound)
      : Error(Errc::ResidualExceeded, what),
        selection_(std::move(selection)),
        residual_(residual),
        bound_(bound) {}

  const std::vector<std::size_t>& selection() const noexcept { return selection_; }
  double residual() const noexcept { return residual_; }
  double bound() const noexcept { return bound_; }

 private:
  std::vector<std::size_t> selection_;
  double residual_;
  double bound_;
};

}  // namespace circfta
