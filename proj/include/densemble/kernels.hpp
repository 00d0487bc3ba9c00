#pragma once

#include <cmath>
#include <string>

#include "densemble/errors.hpp"

namespace densemble {

enum class Kernel { gaussian, triangular };

inline constexpr double inv_sqrt_2pi = 0.3989422804014326779399461;

inline double kernel_value(Kernel k, double u) {
  switch (k) {
    case Kernel::gaussian:
      return inv_sqrt_2pi * std::exp(-0.5 * u * u);
    case Kernel::triangular:
      return std::max(0.0, 1.0 - std::abs(u));
  }
  return 0.0;
}

// Radius beyond which the kernel is exactly zero in double arithmetic.
// For the Gaussian, exp(-u^2/2) underflows to 0.0 before |u| reaches 39,
// so restricting sums to this window leaves their value unchanged.
inline double kernel_cutoff(Kernel k) {
  return k == Kernel::gaussian ? 39.0 : 1.0;
}

inline const char* kernel_name(Kernel k) {
  return k == Kernel::gaussian ? "gaussian" : "triangular";
}

inline Kernel parse_kernel(const std::string& name) {
  if (name == "gaussian") return Kernel::gaussian;
  if (name == "triangular") return Kernel::triangular;
  throw config_error("unknown kernel: " + name);
}

}  // namespace densemble
