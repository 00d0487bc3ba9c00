#pragma once

#include <cstdint>
#include <numeric>
#include <variant>
#include <vector>

#include "densemble/em.hpp"
#include "densemble/ensemble.hpp"
#include "densemble/errors.hpp"
#include "densemble/histogram.hpp"
#include "densemble/kde.hpp"
#include "densemble/mixtures.hpp"
#include "densemble/rng.hpp"

namespace densemble {

// A stacking base learner: a fixed-bandwidth KDE or an equispaced histogram.
struct KdeLearner {
  Kernel kernel;
  double bandwidth;
};
struct HistogramLearner {
  int breakpoints;
};
using LearnerSpec = std::variant<KdeLearner, HistogramLearner>;

inline Density fit_learner(const LearnerSpec& spec, const Sample& sample) {
  if (const auto* kde = std::get_if<KdeLearner>(&spec))
    return Density(KernelDensity(sample, kde->kernel, kde->bandwidth));
  return Density(Histogram::fit(sample, std::get<HistogramLearner>(spec).breakpoints));
}

// Six fixed KDEs: Gaussian and triangular kernels, bandwidths 0.1, 0.2, 0.3.
inline std::vector<LearnerSpec> stacking_default_learners() {
  std::vector<LearnerSpec> out;
  for (Kernel k : {Kernel::gaussian, Kernel::triangular})
    for (double h : {0.1, 0.2, 0.3}) out.push_back(KdeLearner{k, h});
  return out;
}

// Six histograms with 5, 10, 20, 30, 40 and 50 equispaced breakpoints.
inline std::vector<LearnerSpec> stackhist_default_learners(
    const std::vector<int>& breakpoints = {5, 10, 20, 30, 40, 50}) {
  std::vector<LearnerSpec> out;
  for (int b : breakpoints) out.push_back(HistogramLearner{b});
  return out;
}

inline std::vector<double> aggpure_default_bandwidths() {
  return {0.001, 0.005, 0.01, 0.05, 0.1, 0.5};
}

namespace detail {

// Shuffled indices dealt round-robin into folds, so fold sizes differ by at
// most one.
inline std::vector<int> fold_assignment(std::size_t n, int folds, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> fold(n);
  for (std::size_t pos = 0; pos < n; ++pos)
    fold[order[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));
  return fold;
}

// Random half split: the first floor(n/2) shuffled indices train, the rest test.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> half_split(
    std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t train_size = n / 2;
  return {std::vector<std::size_t>(order.begin(), order.begin() + train_size),
          std::vector<std::size_t>(order.begin() + train_size, order.end())};
}

}  // namespace detail

// Stacked density estimation: every learner is fit on each fold complement and
// evaluated on the held-out fold; EM turns the held-out evaluations into
// convex weights; the returned mixture combines full-sample refits.
inline MixtureDensity stack_densities(const Sample& sample,
                                      const std::vector<LearnerSpec>& learners,
                                      int folds, std::uint64_t seed) {
  if (learners.empty()) throw config_error("stacking needs at least one learner");
  if (folds < 2) throw config_error("stacking needs at least 2 folds");
  validate_sample(sample);
  const std::size_t n = sample.size();
  if (n < static_cast<std::size_t>(folds))
    throw config_error("stacking needs at least one observation per fold");
  const std::size_t m_count = learners.size();

  Rng rng = make_rng(derive_seed(seed, std::uint64_t{0}));
  const std::vector<int> fold = detail::fold_assignment(n, folds, rng);

  HeldOutMatrix held_out(n, m_count);
  for (int v = 0; v < folds; ++v) {
    Sample train;
    train.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      if (fold[i] != v) train.push_back(sample[i]);
    for (std::size_t m = 0; m < m_count; ++m) {
      const Density fitted = fit_learner(learners[m], train);
      for (std::size_t i = 0; i < n; ++i)
        if (fold[i] == v) held_out.at(i, m) = fitted(sample[i]);
    }
  }

  const EmResult em = em_mixture_weights(held_out);
  std::vector<Density> refits;
  refits.reserve(m_count);
  for (const auto& spec : learners) refits.push_back(fit_learner(spec, sample));
  return MixtureDensity(std::move(refits), em.weights);
}

// Split-and-average aggregation of fixed-bandwidth Gaussian KDEs: for each
// random half split, the KDEs are fit on the first half, their convex weights
// come from EM on the second half, and the per-split mixtures (components kept
// on the first half, no refit) are averaged.
inline AverageDensity agg_pure(const Sample& sample,
                               const std::vector<double>& bandwidths, int splits,
                               std::uint64_t seed) {
  if (bandwidths.empty()) throw config_error("agg_pure needs bandwidths");
  for (double h : bandwidths)
    if (!(h > 0.0)) throw config_error("bandwidths must be positive");
  if (splits < 1) throw config_error("agg_pure needs at least one split");
  validate_sample(sample, 4);
  const std::size_t n = sample.size();

  std::vector<MixtureDensity> terms;
  terms.reserve(static_cast<std::size_t>(splits));
  for (int s = 0; s < splits; ++s) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const auto [train_idx, test_idx] = detail::half_split(n, rng);
    Sample train;
    train.reserve(train_idx.size());
    for (std::size_t i : train_idx) train.push_back(sample[i]);

    std::vector<KernelDensity> fits;
    fits.reserve(bandwidths.size());
    for (double h : bandwidths)
      fits.emplace_back(train, Kernel::gaussian, h);

    HeldOutMatrix held_out(test_idx.size(), bandwidths.size());
    for (std::size_t r = 0; r < test_idx.size(); ++r)
      for (std::size_t m = 0; m < fits.size(); ++m)
        held_out.at(r, m) = fits[m](sample[test_idx[r]]);

    const EmResult em = em_mixture_weights(held_out);
    std::vector<Density> components(fits.begin(), fits.end());
    terms.emplace_back(std::move(components), em.weights);
  }
  return AverageDensity(std::move(terms));
}

}  // namespace densemble
