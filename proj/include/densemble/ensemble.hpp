#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "densemble/errors.hpp"
#include "densemble/histogram.hpp"
#include "densemble/mixtures.hpp"
#include "densemble/rng.hpp"
#include "densemble/sample.hpp"

namespace densemble {

namespace detail {

using Resampler = std::function<Sample(const Sample&, Rng&)>;

inline Sample bootstrap_resample(const Sample& sample, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, sample.size() - 1);
  Sample out(sample.size());
  for (double& v : out) v = sample[pick(rng)];
  return out;
}

// Each breakpoint moved by independent N(0, sigma) noise, then sorted.
inline std::vector<double> perturb_breakpoints(const std::vector<double>& breaks,
                                               double sigma, Rng& rng) {
  std::vector<double> out = breaks;
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& b : out) b += noise(rng);
    std::sort(out.begin(), out.end());
  }
  return out;
}

inline double min_gap(const std::vector<double>& breaks) {
  double g = breaks[1] - breaks[0];
  for (std::size_t l = 1; l + 1 < breaks.size(); ++l)
    g = std::min(g, breaks[l + 1] - breaks[l]);
  return g;
}

// Bagging core with a pluggable resampler. Component m draws from the
// sub-stream (seed, m), so a longer run extends a shorter one.
inline MixtureDensity bag_hist_with(const Sample& sample, int breakpoints,
                                    int ensemble_size, std::uint64_t seed,
                                    const Resampler& resample) {
  if (ensemble_size < 1) throw config_error("ensemble size must be >= 1");
  validate_sample(sample);
  std::vector<Density> components;
  components.reserve(static_cast<std::size_t>(ensemble_size));
  for (int m = 0; m < ensemble_size; ++m) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(m)));
    bool built = false;
    for (int attempt = 0; attempt < 100 && !built; ++attempt) {
      Sample draw = resample(sample, rng);
      const auto [lo, hi] = std::minmax_element(draw.begin(), draw.end());
      if (!(*lo < *hi)) continue;  // zero-width resample, redraw
      components.emplace_back(Histogram::fit(draw, breakpoints));
      built = true;
    }
    if (!built)
      throw numeric_error("bootstrap resampling produced no usable sample");
  }
  return MixtureDensity(std::move(components),
                        std::vector<double>(static_cast<std::size_t>(ensemble_size),
                                            1.0 / ensemble_size));
}

}  // namespace detail

// Bagged histograms: each component is an equispaced-breakpoint histogram of
// an n-out-of-n bootstrap resample, over that resample's own range.
inline MixtureDensity bag_hist(const Sample& sample, int breakpoints,
                               int ensemble_size, std::uint64_t seed) {
  return detail::bag_hist_with(sample, breakpoints, ensemble_size, seed,
                               detail::bootstrap_resample);
}

// Histograms over randomly perturbed breakpoints: the base equispaced grid is
// jittered with N(0, sigma) noise, sigma = gamma times the smallest gap, and
// each perturbed grid is re-fit on the original sample.
inline MixtureDensity aggreg_hist(const Sample& sample, int breakpoints,
                                  double gamma, int ensemble_size,
                                  std::uint64_t seed) {
  if (ensemble_size < 1) throw config_error("ensemble size must be >= 1");
  if (!(gamma >= 0.0)) throw config_error("gamma must be nonnegative");
  validate_sample(sample);
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const std::vector<double> base =
      Histogram::equispaced_breakpoints(*lo_it, *hi_it, breakpoints);
  const double range = base.back() - base.front();
  const double sigma = gamma * detail::min_gap(base);

  std::vector<Density> components;
  components.reserve(static_cast<std::size_t>(ensemble_size));
  for (int m = 0; m < ensemble_size; ++m) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(m)));
    bool built = false;
    for (int attempt = 0; attempt < 100 && !built; ++attempt) {
      std::vector<double> perturbed = detail::perturb_breakpoints(base, sigma, rng);
      if (detail::min_gap(perturbed) < 1e-12 * range) continue;
      try {
        components.emplace_back(Histogram::fit(sample, std::move(perturbed)));
        built = true;
      } catch (const numeric_error&) {
        // all observations fell outside the perturbed range; redraw
      }
    }
    if (!built)
      throw numeric_error("breakpoint perturbation produced no usable histogram");
  }
  return MixtureDensity(std::move(components),
                        std::vector<double>(static_cast<std::size_t>(ensemble_size),
                                            1.0 / ensemble_size));
}

}  // namespace densemble
