#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "densemble/density.hpp"
#include "densemble/errors.hpp"
#include "densemble/models.hpp"
#include "densemble/parallel.hpp"
#include "densemble/quadrature.hpp"
#include "densemble/rng.hpp"

namespace densemble {

// Integrated squared error of an estimate against a model's exact density,
// by trapezoid quadrature over the model's integration domain.
inline double ise(const Density& estimate, Model model, int grid_points = 4097) {
  const Support dom = model_domain(model);
  const QuadratureGrid grid(dom.lo, dom.hi, grid_points);
  std::vector<double> values(static_cast<std::size_t>(grid.points), 0.0);
  estimate.add_grid_values(grid.lo, grid.step(), grid.points, values.data());
  const double step = grid.step();
  for (int g = 0; g < grid.points; ++g) {
    const double diff =
        values[static_cast<std::size_t>(g)] - model_density(model, grid.at(g));
    values[static_cast<std::size_t>(g)] = diff * diff;
  }
  return trapezoid(values, step);
}

// Mean over test sets of the per-observation average log density, with
// densities floored at 1e-12 so estimators that miss data pay a finite
// penalty instead of producing -inf.
inline double mean_log_likelihood(const Density& d,
                                  const std::vector<Sample>& test_sets) {
  if (test_sets.empty()) throw config_error("need at least one test set");
  constexpr double floor = 1e-12;
  double total = 0.0;
  for (const auto& sample : test_sets) {
    if (sample.empty()) throw config_error("empty test set");
    double acc = 0.0;
    for (double x : sample) acc += std::log(std::max(d(x), floor));
    total += acc / static_cast<double>(sample.size());
  }
  return total / static_cast<double>(test_sets.size());
}

// A labeled fitting procedure; `fit` must be a pure function of the sample
// and the seed so replications can run in any order or in parallel.
struct Estimator {
  std::string label;
  std::function<Density(const Sample&, std::uint64_t)> fit;
};

struct MiseResult {
  double mean_ise = 0.0;
  double std_error = 0.0;
  int replications = 0;
  int sample_size = 0;
  std::string estimator;
  Model model = Model::m1;
};

// Monte-Carlo MISE: `replications` independent samples are drawn from
// per-replication sub-streams of `seed`, the estimator is fit to each, and
// the integrated squared errors are averaged. A replication whose fit fails
// is retried with a fresh sample up to five times. The result is identical
// for any thread count.
inline MiseResult mise(const Estimator& estimator, Model model, int sample_size,
                       int replications, std::uint64_t seed, int threads = 1) {
  if (replications < 1) throw config_error("need at least one replication");
  if (sample_size < 2) throw config_error("sample size must be at least 2");
  std::vector<double> errors(static_cast<std::size_t>(replications), 0.0);
  std::vector<std::string> failures(static_cast<std::size_t>(replications));

  parallel_for(replications, threads, [&](int r) {
    std::string last_error = "unknown";
    for (int attempt = 0; attempt < 5; ++attempt) {
      const std::uint64_t rep_seed =
          derive_seed(seed, static_cast<std::uint64_t>(r),
                      static_cast<std::uint64_t>(attempt));
      Rng rng = make_rng(derive_seed(rep_seed, std::uint64_t{0}));
      const Sample sample =
          model_sample(model, static_cast<std::size_t>(sample_size), rng);
      try {
        const Density fitted =
            estimator.fit(sample, derive_seed(rep_seed, std::uint64_t{1}));
        errors[static_cast<std::size_t>(r)] = ise(fitted, model);
        return;
      } catch (const numeric_error& e) {
        last_error = e.what();
      }
    }
    failures[static_cast<std::size_t>(r)] =
        "replication " + std::to_string(r) + " failed 5 times: " + last_error;
  });

  for (const auto& f : failures)
    if (!f.empty()) throw numeric_error(estimator.label + ": " + f);

  MiseResult result;
  result.replications = replications;
  result.sample_size = sample_size;
  result.estimator = estimator.label;
  result.model = model;
  double sum = 0.0;
  for (double e : errors) sum += e;
  result.mean_ise = sum / static_cast<double>(replications);
  if (replications > 1) {
    double ss = 0.0;
    for (double e : errors) ss += (e - result.mean_ise) * (e - result.mean_ise);
    const double sd = std::sqrt(ss / static_cast<double>(replications - 1));
    result.std_error = sd / std::sqrt(static_cast<double>(replications));
  }
  return result;
}

}  // namespace densemble
