#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "densemble/ensemble.hpp"
#include "densemble/errors.hpp"
#include "densemble/estimators.hpp"
#include "densemble/evaluation.hpp"
#include "densemble/models.hpp"
#include "densemble/parallel.hpp"
#include "densemble/rng.hpp"

namespace densemble {

enum class TuneFamily { histogram, bag_hist, aggreg_hist };

inline const char* tune_family_name(TuneFamily f) {
  switch (f) {
    case TuneFamily::histogram: return "histogram";
    case TuneFamily::bag_hist: return "baghist";
    case TuneFamily::aggreg_hist: return "aggreghist";
  }
  return "";
}

inline TuneFamily parse_tune_family(const std::string& name) {
  if (name == "histogram") return TuneFamily::histogram;
  if (name == "baghist") return TuneFamily::bag_hist;
  if (name == "aggreghist") return TuneFamily::aggreg_hist;
  throw config_error("unknown tuning family: " + name);
}

struct TuneGrid {
  std::vector<int> breaks_grid{10, 20, 50};
  std::vector<double> gamma_grid{0.5, 1.0, 1.5, 2.0, 2.5};
  int ensemble_size = 300;
  int test_sets = 100;
};

struct TuneScore {
  int breaks = 0;
  double gamma = 0.0;  // unused for histogram and bagged families
  double score = 0.0;
  bool failed = false;
  std::string error;
};

struct TuneResult {
  int best_breaks = 0;
  double best_gamma = 0.0;
  std::vector<TuneScore> table;
};

// Grid search over breakpoint counts (and gamma, for the perturbed-breakpoint
// family), scored by mean log likelihood over fresh test sets. One training
// sample and one collection of test sets are shared by every grid point, so
// score differences reflect the parameters alone. Ties break toward fewer
// breakpoints, then smaller gamma.
inline TuneResult tune(TuneFamily family, Model model, int n,
                       const TuneGrid& grid = {}, std::uint64_t seed = 0,
                       int threads = 1) {
  if (grid.breaks_grid.empty()) throw config_error("empty breakpoint grid");
  if (family == TuneFamily::aggreg_hist && grid.gamma_grid.empty())
    throw config_error("empty gamma grid");
  if (grid.test_sets < 1) throw config_error("need at least one test set");

  Rng train_rng = make_rng(derive_seed(seed, std::uint64_t{1}));
  const Sample train = model_sample(model, static_cast<std::size_t>(n), train_rng);
  std::vector<Sample> tests(static_cast<std::size_t>(grid.test_sets));
  for (int k = 0; k < grid.test_sets; ++k) {
    Rng rng = make_rng(derive_seed(seed, std::uint64_t{2}, static_cast<std::uint64_t>(k)));
    tests[static_cast<std::size_t>(k)] =
        model_sample(model, static_cast<std::size_t>(n), rng);
  }

  std::vector<int> breaks_grid = grid.breaks_grid;
  std::sort(breaks_grid.begin(), breaks_grid.end());
  std::vector<double> gamma_grid = grid.gamma_grid;
  std::sort(gamma_grid.begin(), gamma_grid.end());

  std::vector<TuneScore> table;
  for (int breaks : breaks_grid) {
    if (family == TuneFamily::aggreg_hist) {
      for (double gamma : gamma_grid) table.push_back(TuneScore{breaks, gamma});
    } else {
      table.push_back(TuneScore{breaks, 0.0});
    }
  }

  parallel_for(static_cast<int>(table.size()), threads, [&](int j) {
    TuneScore& entry = table[static_cast<std::size_t>(j)];
    const std::uint64_t fit_seed =
        derive_seed(seed, std::uint64_t{3}, static_cast<std::uint64_t>(j));
    try {
      Density fitted = [&]() -> Density {
        switch (family) {
          case TuneFamily::histogram:
            return Density(Histogram::fit(train, entry.breaks));
          case TuneFamily::bag_hist:
            return Density(bag_hist(train, entry.breaks, grid.ensemble_size, fit_seed));
          case TuneFamily::aggreg_hist:
          default:
            return Density(aggreg_hist(train, entry.breaks, entry.gamma,
                                       grid.ensemble_size, fit_seed));
        }
      }();
      entry.score = mean_log_likelihood(fitted, tests);
    } catch (const numeric_error& e) {
      entry.failed = true;
      entry.error = e.what();
    }
  });

  TuneResult result;
  result.table = table;
  // Entries are generated in (breaks ascending, gamma ascending) order, so a
  // strict comparison realizes the tie-break.
  bool have = false;
  double best = 0.0;
  for (const auto& entry : table) {
    if (entry.failed) continue;
    if (!have || entry.score > best) {
      best = entry.score;
      result.best_breaks = entry.breaks;
      result.best_gamma = entry.gamma;
      have = true;
    }
  }
  if (!have) throw numeric_error("every grid point failed to fit");
  return result;
}

}  // namespace densemble
