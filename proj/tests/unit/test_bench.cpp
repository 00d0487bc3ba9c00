#include <catch2/catch_amalgamated.hpp>
#include <filesystem>
#include <fstream>

#include "densemble/bench.hpp"

using namespace densemble;
using nlohmann::json;

namespace {

json tiny_config() {
  return json{{"seed", 99},
              {"replications", 2},
              {"models", {"M1"}},
              {"sample_sizes", {60}},
              {"estimators",
               {{{"type", "histogram"}, {"breaks", 10}},
                {{"type", "bag_hist"}, {"breaks", 10}, {"ensemble_size", 5}}}}};
}

}  // namespace

TEST_CASE("config parsing and validation") {
  const ExperimentConfig cfg = parse_config(tiny_config());
  CHECK(cfg.seed == 99);
  CHECK(cfg.replications == 2);
  REQUIRE(cfg.estimators.size() == 2);
  CHECK(cfg.estimators[0].label == "Histogram");
  CHECK(cfg.estimators[1].label == "BagHist");

  json bad = tiny_config();
  bad["estimators"][1]["type"] = "nonsense";
  CHECK_THROWS_AS(parse_config(bad), config_error);

  json dup = tiny_config();
  dup["estimators"][1] = dup["estimators"][0];
  CHECK_THROWS_AS(parse_config(dup), config_error);

  json badmodel = tiny_config();
  badmodel["models"] = {"M99"};
  CHECK_THROWS_AS(parse_config(badmodel), config_error);

  json badreps = tiny_config();
  badreps["replications"] = 0;
  CHECK_THROWS_AS(parse_config(badreps), config_error);

  json badformat = tiny_config();
  badformat["format"] = "xml";
  CHECK_THROWS_AS(parse_config(badformat), config_error);
}

TEST_CASE("per-model overrides resolve breakpoints and gamma") {
  EstimatorSetting s;
  s.type = "aggreg_hist";
  s.breaks = 50;
  s.gamma = 0.5;
  s.per_model["M3"] = {10, 2.0};
  CHECK(detail::resolved_params(s, Model::m3, 500) == std::pair<int, double>{10, 2.0});
  CHECK(detail::resolved_params(s, Model::m1, 500) == std::pair<int, double>{50, 0.5});

  // without explicit values the tuned table fills in
  EstimatorSetting t;
  t.type = "aggreg_hist";
  CHECK(detail::resolved_params(t, Model::m1, 500) ==
        std::pair<int, double>{10, 0.5});
  CHECK(detail::resolved_params(t, Model::m5, 500) ==
        std::pair<int, double>{50, 2.0});
}

TEST_CASE("a one-cell benchmark equals the underlying Monte-Carlo call") {
  json j = tiny_config();
  j["replications"] = 1;
  j["estimators"] = {{{"type", "histogram"}, {"breaks", 10}}};
  const ExperimentConfig cfg = parse_config(j);
  const BenchResult result = run_benchmark(cfg);
  REQUIRE(result.cells.size() == 1);

  const std::uint64_t stream =
      derive_seed(cfg.seed, fnv1a64("M1"), std::uint64_t{60}, fnv1a64("Histogram"));
  const MiseResult direct =
      mise(histogram_estimator(10), Model::m1, 60, 1, stream);
  CHECK(result.cells[0].mean_ise == direct.mean_ise);
  CHECK(result.cells[0].std_error == 0.0);
}

TEST_CASE("adding an estimator leaves existing cells unchanged") {
  json small = tiny_config();
  small["estimators"] = {{{"type", "histogram"}, {"breaks", 10}}};
  const BenchResult a = run_benchmark(parse_config(small));
  const BenchResult b = run_benchmark(parse_config(tiny_config()));
  CHECK(a.cell(Model::m1, 60, "Histogram").mean_ise ==
        b.cell(Model::m1, 60, "Histogram").mean_ise);
}

TEST_CASE("benchmark output is deterministic and thread-invariant") {
  const ExperimentConfig cfg = parse_config(tiny_config());
  const BenchResult a = run_benchmark(cfg, 1);
  const BenchResult b = run_benchmark(cfg, 3);
  CHECK(render_csv(a, 60) == render_csv(b, 60));
  const BenchResult c = run_benchmark(cfg, 1);
  CHECK(render_csv(a, 60) == render_csv(c, 60));
}

TEST_CASE("CSV layout has one row per model and a winner column") {
  const BenchResult r = run_benchmark(parse_config(tiny_config()));
  const std::string csv = render_csv(r, 60);
  CHECK(csv.starts_with(
      "model,Histogram,Histogram_se,BagHist,BagHist_se,winner\n"));
  CHECK(csv.find("\nM1,") != std::string::npos);
  const auto last_comma = csv.rfind(',');
  const std::string winner = csv.substr(last_comma + 1);
  CHECK((winner == "Histogram\n" || winner == "BagHist\n"));
}

TEST_CASE("atomic writes leave no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path() / "densemble_test_out";
  std::filesystem::remove_all(dir);
  const auto path = dir / "table.csv";
  write_file_atomic(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  CHECK(contents == "a,b\n1,2\n");
  CHECK(!std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("curve points are deterministic and ordered by ensemble size") {
  const auto points =
      run_curve(Model::m5, TuneFamily::bag_hist, 10, 0.0, 60, {1, 4}, 3, 12);
  REQUIRE(points.size() == 2);
  CHECK(points[0].ensemble_size == 1);
  CHECK(points[1].ensemble_size == 4);
  for (const auto& p : points) {
    CHECK(p.mean_ise >= 0.0);
    CHECK(p.estimator == "BagHist");
  }
  const auto again =
      run_curve(Model::m5, TuneFamily::bag_hist, 10, 0.0, 60, {1, 4}, 3, 12);
  CHECK(render_curve_csv(points) == render_curve_csv(again));
  CHECK(render_curve_csv(points).starts_with("model,estimator,M,mise,stderr\n"));
}

TEST_CASE("json rendering carries every cell") {
  const BenchResult r = run_benchmark(parse_config(tiny_config()));
  const json j = render_json(r);
  CHECK(j["cells"].size() == 2);
  CHECK(j["seed"] == 99);
}
