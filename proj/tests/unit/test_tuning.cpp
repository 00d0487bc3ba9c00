#include <catch2/catch_amalgamated.hpp>

#include "densemble/tuning.hpp"

using namespace densemble;

namespace {

TuneGrid small_grid() {
  TuneGrid g;
  g.breaks_grid = {5, 10, 20};
  g.gamma_grid = {0.5, 1.5};
  g.ensemble_size = 10;
  g.test_sets = 5;
  return g;
}

}  // namespace

TEST_CASE("a singleton grid is returned unchanged") {
  TuneGrid g;
  g.breaks_grid = {12};
  g.gamma_grid = {1.5};
  g.ensemble_size = 5;
  g.test_sets = 3;
  const TuneResult r = tune(TuneFamily::aggreg_hist, Model::m1, 60, g, 1);
  CHECK(r.best_breaks == 12);
  CHECK(r.best_gamma == 1.5);
  REQUIRE(r.table.size() == 1);
}

TEST_CASE("the winner attains the maximum of the score table") {
  for (TuneFamily family :
       {TuneFamily::histogram, TuneFamily::bag_hist, TuneFamily::aggreg_hist}) {
    const TuneResult r = tune(family, Model::m5, 80, small_grid(), 7);
    double best = -1e300;
    for (const auto& row : r.table) {
      REQUIRE(!row.failed);
      best = std::max(best, row.score);
    }
    bool found = false;
    for (const auto& row : r.table) {
      if (row.breaks == r.best_breaks &&
          (family != TuneFamily::aggreg_hist || row.gamma == r.best_gamma)) {
        CHECK(row.score == best);
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("gamma is only searched for the perturbed-breakpoint family") {
  const TuneGrid g = small_grid();
  CHECK(tune(TuneFamily::histogram, Model::m1, 60, g, 3).table.size() == 3);
  CHECK(tune(TuneFamily::bag_hist, Model::m1, 60, g, 3).table.size() == 3);
  CHECK(tune(TuneFamily::aggreg_hist, Model::m1, 60, g, 3).table.size() == 6);
}

TEST_CASE("tuning is deterministic for a fixed seed") {
  const TuneResult a = tune(TuneFamily::aggreg_hist, Model::m8, 70, small_grid(), 11);
  const TuneResult b = tune(TuneFamily::aggreg_hist, Model::m8, 70, small_grid(), 11);
  REQUIRE(a.table.size() == b.table.size());
  for (std::size_t i = 0; i < a.table.size(); ++i)
    CHECK(a.table[i].score == b.table[i].score);
  CHECK(a.best_breaks == b.best_breaks);
  CHECK(a.best_gamma == b.best_gamma);
}

TEST_CASE("tuning validates its grids") {
  TuneGrid g = small_grid();
  g.breaks_grid = {};
  CHECK_THROWS_AS(tune(TuneFamily::histogram, Model::m1, 60, g, 1), config_error);
  TuneGrid g2 = small_grid();
  g2.gamma_grid = {};
  CHECK_THROWS_AS(tune(TuneFamily::aggreg_hist, Model::m1, 60, g2, 1), config_error);
  CHECK_NOTHROW(tune(TuneFamily::histogram, Model::m1, 60, g2, 1));
}

TEST_CASE("family names round-trip") {
  for (TuneFamily f :
       {TuneFamily::histogram, TuneFamily::bag_hist, TuneFamily::aggreg_hist})
    CHECK(parse_tune_family(tune_family_name(f)) == f);
  CHECK_THROWS_AS(parse_tune_family("stacking"), config_error);
}
