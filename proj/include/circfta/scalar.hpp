#pragma once

#include <cmath>
#include <complex>

namespace circfta {

using Scalar = std::complex<double>;

inline bool is_finite(const Scalar& z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace circfta
