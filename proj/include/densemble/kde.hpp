#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "densemble/density.hpp"
#include "densemble/errors.hpp"
#include "densemble/kernels.hpp"
#include "densemble/sample.hpp"

namespace densemble {

// Weighted kernel density estimate with fixed bandwidth:
//   g(x) = sum_i (w_i / h) K((x - x_i) / h).
// Centers are stored in ascending order with their weights, so evaluation can
// restrict the sum to centers within the kernel cutoff window; terms outside
// the window are exactly zero in double arithmetic.
class KernelDensity {
 public:
  KernelDensity(const Sample& centers, Kernel kernel, double bandwidth,
                std::vector<double> weights = {})
      : h_(bandwidth), kernel_(kernel) {
    validate_sample(centers, 1);
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
      throw config_error("bandwidth must be positive");
    const std::size_t n = centers.size();
    if (weights.empty()) {
      weights.assign(n, 1.0 / static_cast<double>(n));
    } else if (weights.size() != n) {
      throw config_error("weights must match the number of centers");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return centers[a] < centers[b]; });
    centers_.resize(n);
    weights_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      centers_[i] = centers[order[i]];
      weights_[i] = weights[order[i]];
      if (!std::isfinite(weights_[i]))
        throw config_error("weights must be finite");
    }
  }

  double operator()(double x) const {
    const double radius = kernel_cutoff(kernel_) * h_;
    const auto first =
        std::lower_bound(centers_.begin(), centers_.end(), x - radius);
    const auto last =
        std::upper_bound(first, centers_.end(), x + radius);
    double acc = 0.0;
    for (auto it = first; it != last; ++it) {
      const std::size_t i = static_cast<std::size_t>(it - centers_.begin());
      acc += weights_[i] * kernel_value(kernel_, (x - *it) / h_);
    }
    return acc / h_;
  }

  void add_grid_values(double lo, double step, int count, double* out,
                       double scale) const {
    if (kernel_ == Kernel::gaussian)
      add_grid_gaussian(lo, step, count, out, scale);
    else
      add_grid_direct(lo, step, count, out, scale);
  }

  Support support() const {
    return {centers_.front() - 8.0 * h_, centers_.back() + 8.0 * h_};
  }

  double bandwidth() const { return h_; }
  Kernel kernel() const { return kernel_; }
  const std::vector<double>& centers() const { return centers_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  void add_grid_direct(double lo, double step, int count, double* out,
                       double scale) const {
    const double radius = kernel_cutoff(kernel_) * h_;
    for (std::size_t i = 0; i < centers_.size(); ++i) {
      const double c = centers_[i];
      const double a = scale * weights_[i] / h_;
      const auto [g_first, g_last] = index_window(c, radius, lo, step, count);
      for (int g = g_first; g <= g_last; ++g)
        out[g] += a * kernel_value(kernel_, (grid_x(lo, step, g) - c) / h_);
    }
  }

  // Gaussian values along a uniform grid satisfy a two-multiply recurrence:
  //   v_{g+1} = v_g * r_g,  r_{g+1} = r_g * q,  q = exp(-(step/h)^2),
  // so each center costs a handful of exp calls instead of one per point.
  void add_grid_gaussian(double lo, double step, int count, double* out,
                         double scale) const {
    constexpr double tiny = 1e-300;
    const double radius = kernel_cutoff(kernel_) * h_;
    const double d = step / h_;
    const double q = std::exp(-d * d);
    for (std::size_t i = 0; i < centers_.size(); ++i) {
      const double c = centers_[i];
      const double a = scale * weights_[i] * inv_sqrt_2pi / h_;
      const auto [g_first, g_last] = index_window(c, radius, lo, step, count);
      if (g_first > g_last) continue;
      const double g0_est = std::floor((c - lo) / step + 0.5);
      const int g0 =
          g0_est <= static_cast<double>(g_first)
              ? g_first
              : (g0_est >= static_cast<double>(g_last)
                     ? g_last
                     : static_cast<int>(g0_est));
      {
        double u = (grid_x(lo, step, g0) - c) / h_;
        double v = std::exp(-0.5 * u * u);
        double r = std::exp(-u * d - 0.5 * d * d);
        for (int g = g0; g <= g_last; ++g) {
          out[g] += a * v;
          v *= r;
          r *= q;
          if (v < tiny) break;
        }
      }
      if (g0 > g_first) {
        double u = (grid_x(lo, step, g0 - 1) - c) / h_;
        double v = std::exp(-0.5 * u * u);
        double r = std::exp(u * d - 0.5 * d * d);
        for (int g = g0 - 1; g >= g_first; --g) {
          out[g] += a * v;
          v *= r;
          r *= q;
          if (v < tiny) break;
        }
      }
    }
  }

  static double grid_x(double lo, double step, int g) {
    return lo + static_cast<double>(g) * step;
  }

  static std::pair<int, int> index_window(double center, double radius,
                                          double lo, double step, int count) {
    const double lo_est = (center - radius - lo) / step;
    const double hi_est = (center + radius - lo) / step;
    if (hi_est < 0.0 || lo_est > static_cast<double>(count - 1)) return {1, 0};
    const int g_first = lo_est <= 0.0 ? 0 : static_cast<int>(std::ceil(lo_est));
    const int g_last = hi_est >= static_cast<double>(count - 1)
                           ? count - 1
                           : static_cast<int>(std::floor(hi_est));
    return {g_first, g_last};
  }

  std::vector<double> centers_;
  std::vector<double> weights_;
  double h_;
  Kernel kernel_;
};

// Convenience fitter mirroring the estimator construction used everywhere:
// uniform weights 1/n unless explicit weights are given.
inline KernelDensity fit_kde(const Sample& sample, Kernel kernel, double bandwidth,
                             std::vector<double> weights = {}) {
  return KernelDensity(sample, kernel, bandwidth, std::move(weights));
}

}  // namespace densemble
