#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "densemble/bandwidth.hpp"
#include "densemble/errors.hpp"
#include "densemble/kde.hpp"
#include "densemble/mixtures.hpp"
#include "densemble/sample.hpp"

namespace densemble {

namespace detail {

struct BoostTrace {
  std::vector<KernelDensity> factors;        // weighted estimate of each step
  std::vector<std::vector<double>> weights;  // weights[0] initial, weights[m] after step m
};

// Multiplicative boosting core. Step m computes the weighted Gaussian KDE
// with the current weights, then updates
//   w_{m+1}(i) = w_m(i) + log( g_m(x_i) / g_m^{(-i)}(x_i) ),
// where the leave-one-out value drops center i with its current weight and
// leaves the remaining weights unchanged.
inline BoostTrace boost_kde_trace(const Sample& sample, int steps, double h) {
  validate_sample(sample);
  if (steps < 1) throw config_error("boosting needs at least one step");
  if (!(h > 0.0)) throw config_error("bandwidth must be positive");
  const std::size_t n = sample.size();
  const double k0_over_h = kernel_value(Kernel::gaussian, 0.0) / h;

  // Pairwise kernel values are the same at every step; cache them when the
  // matrix is affordable.
  const bool cache = n <= 4096;
  std::vector<double> kmat;
  if (cache) {
    kmat.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      kmat[i * n + i] = kernel_value(Kernel::gaussian, 0.0);
      for (std::size_t j = i + 1; j < n; ++j) {
        const double k = kernel_value(Kernel::gaussian, (sample[i] - sample[j]) / h);
        kmat[i * n + j] = k;
        kmat[j * n + i] = k;
      }
    }
  }

  BoostTrace trace;
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  trace.weights.push_back(w);
  for (int m = 0; m < steps; ++m) {
    trace.factors.emplace_back(sample, Kernel::gaussian, h, w);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      double g = 0.0;
      if (cache) {
        const double* row = &kmat[i * n];
        for (std::size_t j = 0; j < n; ++j) g += w[j] * row[j];
      } else {
        for (std::size_t j = 0; j < n; ++j)
          g += w[j] * kernel_value(Kernel::gaussian, (sample[i] - sample[j]) / h);
      }
      g /= h;
      const double g_loo = g - w[i] * k0_over_h;
      const double update = std::log(g / g_loo);
      if (!(g_loo > 0.0) || !std::isfinite(update))
        throw numeric_error("degenerate leave-one-out value");
      next[i] = w[i] + update;
    }
    w = std::move(next);
    trace.weights.push_back(w);
  }
  return trace;
}

}  // namespace detail

// Multiplicative boosting of weighted Gaussian KDEs; the output is the
// normalized product of the per-step estimates over the given domain.
// Defaults: 5 steps, rule-of-thumb bandwidth, domain [min-4h, max+4h].
inline ProductDensity boost_kde(const Sample& sample, int steps = 5,
                                std::optional<double> bandwidth = std::nullopt,
                                std::optional<Support> domain = std::nullopt) {
  validate_sample(sample);
  const double h = bandwidth.value_or(bandwidth_nrd0(sample));
  if (!(h > 0.0)) throw config_error("bandwidth must be positive");
  Support dom;
  if (domain) {
    dom = *domain;
  } else {
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    dom = {*lo - 4.0 * h, *hi + 4.0 * h};
  }
  detail::BoostTrace trace = detail::boost_kde_trace(sample, steps, h);
  return ProductDensity(std::move(trace.factors), dom);
}

}  // namespace densemble
