#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "densemble/errors.hpp"
#include "densemble/estimators.hpp"
#include "densemble/evaluation.hpp"
#include "densemble/models.hpp"
#include "densemble/tuning.hpp"

namespace densemble {

// One estimator entry of a benchmark configuration. `type` selects the
// family; parameters not meaningful for the family are ignored. Breakpoint
// counts and gamma may be overridden per model.
struct EstimatorSetting {
  std::string type;
  std::string label;
  std::optional<int> breaks;
  std::optional<double> gamma;
  int ensemble_size = 300;
  int steps = 5;
  int folds = 10;
  int splits = 10;
  std::vector<double> bandwidths = aggpure_default_bandwidths();
  std::vector<int> breaks_list = {5, 10, 20, 30, 40, 50};
  struct Override {
    std::optional<int> breaks;
    std::optional<double> gamma;
  };
  std::map<std::string, Override> per_model;
};

struct ExperimentConfig {
  std::vector<Model> models;
  std::vector<int> sample_sizes;
  std::vector<EstimatorSetting> estimators;
  int replications = 100;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  std::string format = "csv";  // csv | json | both
};

namespace detail {

inline std::pair<int, double> resolved_params(const EstimatorSetting& setting,
                                              Model model, int n) {
  const TunedParams tuned = tuned_params(model, n);
  int breaks = 0;
  double gamma = 0.0;
  if (setting.type == "histogram") breaks = tuned.histogram_breaks;
  if (setting.type == "bag_hist") breaks = tuned.baghist_breaks;
  if (setting.type == "aggreg_hist") {
    breaks = tuned.aggreghist_breaks;
    gamma = tuned.aggreghist_gamma;
  }
  if (setting.breaks) breaks = *setting.breaks;
  if (setting.gamma) gamma = *setting.gamma;
  const auto it = setting.per_model.find(model_name(model));
  if (it != setting.per_model.end()) {
    if (it->second.breaks) breaks = *it->second.breaks;
    if (it->second.gamma) gamma = *it->second.gamma;
  }
  return {breaks, gamma};
}

}  // namespace detail

// Instantiates the labeled estimator for one (model, n) cell, resolving
// per-model parameter overrides; unset breakpoint counts fall back to the
// built-in tuned table.
inline Estimator make_estimator(const EstimatorSetting& setting, Model model, int n) {
  const auto [breaks, gamma] = detail::resolved_params(setting, model, n);
  Estimator est;
  if (setting.type == "histogram")
    est = histogram_estimator(breaks);
  else if (setting.type == "kde_nrd0")
    est = kde_nrd0_estimator();
  else if (setting.type == "kde_ucv")
    est = kde_ucv_estimator();
  else if (setting.type == "boost_kde")
    est = boost_kde_estimator(setting.steps);
  else if (setting.type == "agg_pure")
    est = agg_pure_estimator(setting.bandwidths, setting.splits);
  else if (setting.type == "stacking")
    est = stacking_estimator(stacking_default_learners(), setting.folds);
  else if (setting.type == "stack_hist")
    est = stack_hist_estimator(setting.breaks_list, setting.folds);
  else if (setting.type == "bag_hist")
    est = bag_hist_estimator(breaks, setting.ensemble_size);
  else if (setting.type == "aggreg_hist")
    est = aggreg_hist_estimator(breaks, gamma, setting.ensemble_size);
  else
    throw config_error("unknown estimator type: " + setting.type);
  if (!setting.label.empty()) est.label = setting.label;
  return est;
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    if (!j.contains("models") || !j.contains("sample_sizes") ||
        !j.contains("estimators"))
      throw config_error("config needs models, sample_sizes and estimators");
    for (const auto& m : j.at("models"))
      cfg.models.push_back(parse_model(m.get<std::string>()));
    for (const auto& n : j.at("sample_sizes")) {
      cfg.sample_sizes.push_back(n.get<int>());
      if (cfg.sample_sizes.back() < 2)
        throw config_error("sample sizes must be at least 2");
    }
    cfg.replications = j.value("replications", 100);
    if (cfg.replications < 1) throw config_error("replications must be >= 1");
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.output_dir = j.value("output_dir", std::string("."));
    cfg.format = j.value("format", std::string("csv"));
    if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "both")
      throw config_error("format must be csv, json or both");

    std::set<std::string> labels;
    for (const auto& e : j.at("estimators")) {
      EstimatorSetting s;
      s.type = e.at("type").get<std::string>();
      s.label = e.value("label", std::string());
      if (e.contains("breaks")) s.breaks = e.at("breaks").get<int>();
      if (e.contains("gamma")) s.gamma = e.at("gamma").get<double>();
      s.ensemble_size = e.value("ensemble_size", 300);
      s.steps = e.value("steps", 5);
      s.folds = e.value("folds", 10);
      s.splits = e.value("splits", 10);
      if (e.contains("bandwidths"))
        s.bandwidths = e.at("bandwidths").get<std::vector<double>>();
      if (e.contains("breaks_list"))
        s.breaks_list = e.at("breaks_list").get<std::vector<int>>();
      if (e.contains("per_model")) {
        for (const auto& [tag, ov] : e.at("per_model").items()) {
          parse_model(tag);  // validates the tag
          EstimatorSetting::Override o;
          if (ov.contains("breaks")) o.breaks = ov.at("breaks").get<int>();
          if (ov.contains("gamma")) o.gamma = ov.at("gamma").get<double>();
          s.per_model[tag] = o;
        }
      }
      // Resolve the final label now so uniqueness can be checked up front.
      const std::string label =
          !s.label.empty() ? s.label
                           : make_estimator(s, Model::m1, 500).label;
      s.label = label;
      if (!labels.insert(label).second)
        throw config_error("duplicate estimator label: " + label);
      cfg.estimators.push_back(std::move(s));
    }
    if (cfg.models.empty() || cfg.sample_sizes.empty() || cfg.estimators.empty())
      throw config_error("config lists must be non-empty");
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

struct BenchCell {
  Model model;
  int sample_size;
  std::string estimator;
  double mean_ise;
  double std_error;
};

struct BenchResult {
  ExperimentConfig config;
  std::vector<BenchCell> cells;  // ordered n-major, then model, then estimator

  const BenchCell& cell(Model model, int n, const std::string& label) const {
    for (const auto& c : cells)
      if (c.model == model && c.sample_size == n && c.estimator == label)
        return c;
    throw config_error("no such result cell");
  }
};

// Runs every (model, n, estimator) cell. The sub-stream of a cell depends
// only on the master seed, the model tag, n and the estimator label, so
// adding or removing estimators leaves other cells' results unchanged.
inline BenchResult run_benchmark(const ExperimentConfig& cfg, int threads = 1) {
  BenchResult result;
  result.config = cfg;
  for (int n : cfg.sample_sizes) {
    for (Model model : cfg.models) {
      for (const auto& setting : cfg.estimators) {
        const Estimator est = make_estimator(setting, model, n);
        const std::uint64_t stream =
            derive_seed(cfg.seed, fnv1a64(model_name(model)),
                        static_cast<std::uint64_t>(n), fnv1a64(est.label));
        const MiseResult r =
            mise(est, model, n, cfg.replications, stream, threads);
        result.cells.push_back(
            BenchCell{model, n, est.label, r.mean_ise, r.std_error});
      }
    }
  }
  return result;
}

namespace detail {

inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace detail

// One CSV table per sample size, mirroring the benchmark table layout: one
// row per model, one column pair (value, standard error) per estimator, cells
// in units of 100 x MISE, plus the per-row winner.
inline std::string render_csv(const BenchResult& result, int n) {
  const auto& cfg = result.config;
  std::string out = "model";
  for (const auto& setting : cfg.estimators)
    out += "," + setting.label + "," + setting.label + "_se";
  out += ",winner\n";
  for (Model model : cfg.models) {
    out += model_name(model);
    std::string winner;
    double best = 0.0;
    for (const auto& setting : cfg.estimators) {
      const BenchCell& c = result.cell(model, n, setting.label);
      out += "," + detail::format_fixed(100.0 * c.mean_ise);
      out += "," + detail::format_fixed(100.0 * c.std_error);
      if (winner.empty() || c.mean_ise < best) {
        best = c.mean_ise;
        winner = c.estimator;
      }
    }
    out += "," + winner + "\n";
  }
  return out;
}

inline nlohmann::json render_json(const BenchResult& result) {
  nlohmann::json j;
  j["seed"] = result.config.seed;
  j["replications"] = result.config.replications;
  j["cells"] = nlohmann::json::array();
  for (const auto& c : result.cells) {
    j["cells"].push_back({{"model", model_name(c.model)},
                          {"n", c.sample_size},
                          {"estimator", c.estimator},
                          {"mise_x100", 100.0 * c.mean_ise},
                          {"stderr_x100", 100.0 * c.std_error}});
  }
  return j;
}

// Writes via a temporary file in the same directory plus rename, so readers
// never observe partial output.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& contents) {
  const std::filesystem::path dir =
      path.has_parent_path() ? path.parent_path() : ".";
  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot write: " + tmp.string());
    out << contents;
    if (!out.flush()) throw config_error("failed writing: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Emits table_n<k>.csv per sample size and/or results.json; returns the paths.
inline std::vector<std::filesystem::path> write_outputs(
    const BenchResult& result, const std::filesystem::path& dir,
    const std::string& format) {
  std::vector<std::filesystem::path> written;
  if (format == "csv" || format == "both") {
    for (int n : result.config.sample_sizes) {
      const auto path = dir / ("table_n" + std::to_string(n) + ".csv");
      write_file_atomic(path, render_csv(result, n));
      written.push_back(path);
    }
  }
  if (format == "json" || format == "both") {
    const auto path = dir / "results.json";
    write_file_atomic(path, render_json(result).dump(2) + "\n");
    written.push_back(path);
  }
  return written;
}

struct CurvePoint {
  Model model;
  std::string estimator;
  int ensemble_size;
  double mean_ise;
  double std_error;
};

// MISE as a function of the number of aggregated histograms. Every ensemble
// size is evaluated on the same per-replication samples with the same
// component sub-streams, so the M-grid points are nested ensembles.
inline std::vector<CurvePoint> run_curve(Model model, TuneFamily family,
                                         int breaks, double gamma, int n,
                                         const std::vector<int>& m_grid,
                                         int reps, std::uint64_t seed,
                                         int threads = 1) {
  if (family == TuneFamily::histogram)
    throw config_error("curves are defined for the ensemble families");
  if (m_grid.empty()) throw config_error("empty ensemble-size grid");
  for (int m : m_grid)
    if (m < 1) throw config_error("ensemble sizes must be >= 1");
  if (reps < 1) throw config_error("need at least one replication");

  const std::string label =
      family == TuneFamily::bag_hist ? "BagHist" : "AggregHist";
  const std::uint64_t stream = derive_seed(seed, fnv1a64(model_name(model)),
                                           static_cast<std::uint64_t>(n),
                                           fnv1a64(label));
  std::vector<std::vector<double>> errors(
      m_grid.size(), std::vector<double>(static_cast<std::size_t>(reps), 0.0));
  parallel_for(reps, threads, [&](int r) {
    Rng rng = make_rng(derive_seed(stream, static_cast<std::uint64_t>(r),
                                   std::uint64_t{0}));
    const Sample sample = model_sample(model, static_cast<std::size_t>(n), rng);
    const std::uint64_t fit_seed =
        derive_seed(stream, static_cast<std::uint64_t>(r), std::uint64_t{1});
    for (std::size_t k = 0; k < m_grid.size(); ++k) {
      const Density fitted =
          family == TuneFamily::bag_hist
              ? Density(bag_hist(sample, breaks, m_grid[k], fit_seed))
              : Density(aggreg_hist(sample, breaks, gamma, m_grid[k], fit_seed));
      errors[k][static_cast<std::size_t>(r)] = ise(fitted, model);
    }
  });

  std::vector<CurvePoint> points;
  for (std::size_t k = 0; k < m_grid.size(); ++k) {
    double sum = 0.0;
    for (double e : errors[k]) sum += e;
    const double mean = sum / static_cast<double>(reps);
    double se = 0.0;
    if (reps > 1) {
      double ss = 0.0;
      for (double e : errors[k]) ss += (e - mean) * (e - mean);
      se = std::sqrt(ss / static_cast<double>(reps - 1)) /
           std::sqrt(static_cast<double>(reps));
    }
    points.push_back(CurvePoint{model, label, m_grid[k], mean, se});
  }
  return points;
}

// Long-format curve output: model, estimator, M, mise, stderr.
inline std::string render_curve_csv(const std::vector<CurvePoint>& points) {
  std::string out = "model,estimator,M,mise,stderr\n";
  for (const auto& p : points) {
    out += std::string(model_name(p.model)) + "," + p.estimator + "," +
           std::to_string(p.ensemble_size) + "," +
           detail::format_fixed(p.mean_ise, 8) + "," +
           detail::format_fixed(p.std_error, 8) + "\n";
  }
  return out;
}

}  // namespace densemble
