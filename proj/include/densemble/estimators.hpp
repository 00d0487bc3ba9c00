#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "densemble/bandwidth.hpp"
#include "densemble/boosting.hpp"
#include "densemble/ensemble.hpp"
#include "densemble/errors.hpp"
#include "densemble/evaluation.hpp"
#include "densemble/histogram.hpp"
#include "densemble/kde.hpp"
#include "densemble/stacking.hpp"

namespace densemble {

inline Estimator histogram_estimator(int breakpoints) {
  return {"Histogram", [breakpoints](const Sample& s, std::uint64_t) {
            return Density(Histogram::fit(s, breakpoints));
          }};
}

inline Estimator kde_nrd0_estimator() {
  return {"KdeNrd0", [](const Sample& s, std::uint64_t) {
            return Density(KernelDensity(s, Kernel::gaussian, bandwidth_nrd0(s)));
          }};
}

inline Estimator kde_ucv_estimator() {
  return {"KdeUCV", [](const Sample& s, std::uint64_t) {
            return Density(KernelDensity(s, Kernel::gaussian, bandwidth_ucv(s)));
          }};
}

inline Estimator boost_kde_estimator(int steps = 5) {
  return {"BoostKde", [steps](const Sample& s, std::uint64_t) {
            return Density(boost_kde(s, steps));
          }};
}

inline Estimator agg_pure_estimator(
    std::vector<double> bandwidths = aggpure_default_bandwidths(),
    int splits = 10) {
  return {"AggPure", [bandwidths = std::move(bandwidths), splits](
                         const Sample& s, std::uint64_t seed) {
            return Density(agg_pure(s, bandwidths, splits, seed));
          }};
}

inline Estimator stacking_estimator(
    std::vector<LearnerSpec> learners = stacking_default_learners(),
    int folds = 10) {
  return {"Stacking", [learners = std::move(learners), folds](
                          const Sample& s, std::uint64_t seed) {
            return Density(stack_densities(s, learners, folds, seed));
          }};
}

inline Estimator stack_hist_estimator(
    std::vector<int> breakpoints = {5, 10, 20, 30, 40, 50}, int folds = 10) {
  return {"StackHist", [learners = stackhist_default_learners(breakpoints),
                        folds](const Sample& s, std::uint64_t seed) {
            return Density(stack_densities(s, learners, folds, seed));
          }};
}

inline Estimator bag_hist_estimator(int breakpoints, int ensemble_size = 300) {
  return {"BagHist", [breakpoints, ensemble_size](const Sample& s,
                                                  std::uint64_t seed) {
            return Density(bag_hist(s, breakpoints, ensemble_size, seed));
          }};
}

inline Estimator aggreg_hist_estimator(int breakpoints, double gamma,
                                       int ensemble_size = 300) {
  return {"AggregHist", [breakpoints, gamma, ensemble_size](
                            const Sample& s, std::uint64_t seed) {
            return Density(aggreg_hist(s, breakpoints, gamma, ensemble_size, seed));
          }};
}

// Grid-search-selected parameters per model and sample size (breakpoint
// counts for the plain, bagged and perturbed histograms, and the
// perturbation coefficient), as used by the benchmark configurations.
struct TunedParams {
  int histogram_breaks;
  int aggreghist_breaks;
  int baghist_breaks;
  double aggreghist_gamma;
};

inline TunedParams tuned_params(Model model, int n) {
  static constexpr TunedParams n100[11] = {
      {50, 10, 50, 1.0}, {50, 10, 50, 0.5}, {50, 10, 50, 0.5}, {50, 20, 50, 0.5},
      {50, 20, 50, 1.0}, {50, 10, 50, 1.0}, {50, 20, 10, 0.5}, {50, 20, 50, 0.5},
      {50, 20, 50, 0.5}, {50, 50, 50, 0.5}, {50, 20, 50, 0.5}};
  static constexpr TunedParams n500[11] = {
      {50, 10, 10, 0.5}, {50, 50, 50, 0.5}, {50, 10, 50, 0.5}, {50, 50, 50, 0.5},
      {50, 50, 50, 2.0}, {50, 20, 20, 1.0}, {20, 20, 20, 0.5}, {50, 50, 50, 0.5},
      {50, 50, 50, 0.5}, {50, 50, 50, 0.5}, {50, 50, 50, 0.5}};
  static constexpr TunedParams n1000[11] = {
      {50, 20, 20, 0.5}, {50, 50, 50, 0.5}, {50, 20, 50, 0.5}, {50, 50, 50, 0.5},
      {50, 50, 50, 1.0}, {50, 50, 20, 2.0}, {20, 50, 20, 0.5}, {50, 50, 50, 2.0},
      {50, 50, 50, 1.0}, {50, 50, 50, 0.5}, {50, 50, 50, 0.5}};
  const auto& table = n <= 250 ? n100 : (n <= 750 ? n500 : n1000);
  return table[static_cast<std::size_t>(model)];
}

}  // namespace densemble
