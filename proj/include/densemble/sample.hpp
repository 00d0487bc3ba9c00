#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "densemble/errors.hpp"

namespace densemble {

// A learning set: finite real observations, at least two for any fit.
using Sample = std::vector<double>;

inline void validate_sample(const Sample& x, std::size_t min_size = 2) {
  if (x.size() < min_size)
    throw config_error("sample too small: need at least " +
                       std::to_string(min_size) + " observations");
  for (double v : x)
    if (!std::isfinite(v)) throw config_error("sample contains non-finite values");
}

inline double mean(const Sample& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Standard deviation with n-1 denominator.
inline double sample_sd(const Sample& x) {
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// Linear-interpolation quantile of an ascending vector (R type 7).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double pos = p * static_cast<double>(n - 1);
  const std::size_t k = static_cast<std::size_t>(pos);
  if (k + 1 >= n) return sorted.back();
  const double frac = pos - static_cast<double>(k);
  return sorted[k] + frac * (sorted[k + 1] - sorted[k]);
}

inline Sample sorted_copy(Sample x) {
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace densemble
