#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "densemble/errors.hpp"
#include "densemble/kde.hpp"
#include "densemble/kernels.hpp"
#include "densemble/quadrature.hpp"
#include "densemble/sample.hpp"

namespace densemble {

// Rule-of-thumb bandwidth 0.9 * min(sd, IQR/1.34) * n^(-1/5), with the usual
// fallback chain when the spread estimates vanish.
inline double bandwidth_nrd0(const Sample& sample) {
  validate_sample(sample);
  const Sample sorted = sorted_copy(sample);
  const double sd = sample_sd(sample);
  const double iqr =
      quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (spread == 0.0) spread = sd;
  if (spread == 0.0) spread = std::abs(sample[0]);
  if (spread == 0.0) spread = 1.0;
  return 0.9 * spread *
         std::pow(static_cast<double>(sample.size()), -0.2);
}

inline std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo))
    throw config_error("log_spaced needs 0 < lo <= hi and count >= 1");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                           static_cast<double>(count - 1));
  return grid;
}

// Default search grid for cross-validated bandwidths: 30 log-spaced points
// in [0.1, 3] times the rule-of-thumb value.
inline std::vector<double> default_ucv_grid(const Sample& sample) {
  const double h0 = bandwidth_nrd0(sample);
  return log_spaced(0.1 * h0, 3.0 * h0, 30);
}

namespace detail {

// Least-squares cross-validation objective for a Gaussian KDE:
//   UCV(h) = \int fhat_h^2 - (2/n) sum_i fhat_{h,-i}(x_i),
// with the squared-density term integrated by trapezoid over
// [min - 4h, max + 4h] and leave-one-out weights 1/(n-1).
inline double ucv_objective(const Sample& sorted, double h, int grid_points = 2049) {
  const std::size_t n = sorted.size();
  const KernelDensity kde(sorted, Kernel::gaussian, h);
  const QuadratureGrid grid(sorted.front() - 4.0 * h, sorted.back() + 4.0 * h,
                            grid_points);
  std::vector<double> values(static_cast<std::size_t>(grid.points), 0.0);
  kde.add_grid_values(grid.lo, grid.step(), grid.points, values.data(), 1.0);
  for (double& v : values) v *= v;
  const double square_term = trapezoid(values, grid.step());

  const double radius = kernel_cutoff(Kernel::gaussian) * h;
  std::vector<double> loo(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = sorted[j] - sorted[i];
      if (d > radius) break;
      const double k = kernel_value(Kernel::gaussian, d / h);
      loo[i] += k;
      loo[j] += k;
    }
  }
  double loo_sum = 0.0;
  for (double v : loo) loo_sum += v;
  loo_sum /= (static_cast<double>(n - 1) * h);
  return square_term - 2.0 * loo_sum / static_cast<double>(n);
}

}  // namespace detail

// Grid element minimizing the cross-validation objective; ties break toward
// the smaller bandwidth.
inline double bandwidth_ucv(const Sample& sample,
                            const std::vector<double>& h_grid) {
  validate_sample(sample);
  if (h_grid.empty()) throw config_error("bandwidth grid is empty");
  for (double h : h_grid)
    if (!(h > 0.0)) throw config_error("bandwidth grid must be positive");
  const Sample sorted = sorted_copy(sample);
  double best_h = 0.0;
  double best_val = 0.0;
  bool have = false;
  for (double h : h_grid) {
    const double val = detail::ucv_objective(sorted, h);
    if (!have || val < best_val || (val == best_val && h < best_h)) {
      best_h = h;
      best_val = val;
      have = true;
    }
  }
  return best_h;
}

inline double bandwidth_ucv(const Sample& sample) {
  return bandwidth_ucv(sample, default_ucv_grid(sample));
}

}  // namespace densemble
