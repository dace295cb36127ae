// siabf command-line tool. Talks to the library exclusively through the
// C API in siabf/siabf.h.

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "siabf/siabf.h"

namespace {

namespace fs = std::filesystem;

struct CliError {
  int exit_code;
  std::string message;
};

void check(siabf_status status) {
  if (status == SIABF_OK) return;
  const int code = status == SIABF_ERR_INTERNAL ? 2 : 1;
  throw CliError{code, std::string(siabf_status_name(status)) + ": " +
                           siabf_last_error()};
}

using SeriesPtr = std::unique_ptr<siabf_series, decltype(&siabf_series_free)>;
using AnalysisPtr =
    std::unique_ptr<siabf_analysis, decltype(&siabf_analysis_free)>;
using ModelPtr = std::unique_ptr<siabf_model, decltype(&siabf_model_free)>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { siabf_string_free(ptr); }
  explicit operator bool() const { return ptr != nullptr; }
};

SeriesPtr load_series(const std::string& path, const std::string& time_col,
                      const std::string& value_col, bool fill_gaps) {
  siabf_series* raw = nullptr;
  check(siabf_series_from_csv(path.c_str(), time_col.c_str(),
                              value_col.c_str(), &raw));
  SeriesPtr series(raw, &siabf_series_free);
  if (fill_gaps && siabf_series_has_gaps(series.get())) {
    siabf_series* filled = nullptr;
    check(siabf_series_interpolate_gaps(series.get(), &filled));
    series.reset(filled);
  }
  return series;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError{1, "cannot write " + path.string()};
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError{1, "cannot open " + path.string()};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Shared flag bundle; each subcommand registers the flags it uses.
struct Options {
  std::string input;
  std::string time_col = "time";
  std::string value_col = "value";
  std::string out_dir = ".";
  std::string model_path;
  std::string pred_path;
  std::string truth_path;
  std::string pred_col = "prediction";
  std::string solver = "l1";
  std::vector<double> cv_grid;
  int q = 50;
  double lambda = 5e-4;
  double threshold_eps = 1e-2;
  double cv_holdout = 0.2;
  int trend_degree = 0;
  bool no_intercept = false;
  std::size_t horizon = 1;
  double train_fraction = 0.8;
  double mape_eps = 1e-8;
  double delete_frac = 0.05;
  double noise_scale = 0.05;
  std::uint64_t seed = 0;
};

siabf_fit_options make_fit_options(const Options& opt) {
  siabf_fit_options fit{};
  siabf_fit_options_defaults(&fit);
  fit.top_period_count = opt.q;
  fit.include_intercept = opt.no_intercept ? 0 : 1;
  fit.trend_degree = opt.trend_degree;
  fit.solver = opt.solver == "stlsq" ? SIABF_SOLVER_STLSQ : SIABF_SOLVER_L1;
  fit.lambda = opt.lambda;
  fit.threshold_eps = opt.threshold_eps;
  fit.cv_holdout_fraction = opt.cv_holdout;
  if (!opt.cv_grid.empty()) {
    fit.cv_grid = opt.cv_grid.data();
    fit.cv_grid_len = opt.cv_grid.size();
  }
  return fit;
}

int cmd_analyze(const Options& opt) {
  const SeriesPtr series =
      load_series(opt.input, opt.time_col, opt.value_col, true);
  siabf_analysis* raw = nullptr;
  check(siabf_analyze(series.get(), opt.q, &raw));
  const AnalysisPtr analysis(raw, &siabf_analysis_free);

  fs::create_directories(opt.out_dir);
  OwnedString json, sorting, periods;
  check(siabf_analysis_to_json(analysis.get(), &json.ptr));
  check(siabf_analysis_sorting_csv(analysis.get(), &sorting.ptr));
  check(siabf_analysis_periods_csv(analysis.get(), &periods.ptr));
  write_file(fs::path(opt.out_dir) / "spectrum.json", json.ptr);
  write_file(fs::path(opt.out_dir) / "sorting_diagram.csv", sorting.ptr);
  write_file(fs::path(opt.out_dir) / "periods.csv", periods.ptr);

  std::cout << "quasi-periodic index: "
            << siabf_analysis_index(analysis.get()) << " ("
            << siabf_analysis_suitability(analysis.get()) << ")\n"
            << "reports written to " << opt.out_dir << "\n";
  return 0;
}

int cmd_fit(const Options& opt) {
  const SeriesPtr series =
      load_series(opt.input, opt.time_col, opt.value_col, true);
  const siabf_fit_options fit_options = make_fit_options(opt);

  const auto t0 = std::chrono::steady_clock::now();
  siabf_model* raw = nullptr;
  OwnedString cv_table;
  check(siabf_fit(series.get(), &fit_options, &raw, &cv_table.ptr));
  const ModelPtr model(raw, &siabf_model_free);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - t0;

  fs::create_directories(opt.out_dir);
  OwnedString json, summary;
  check(siabf_model_to_json(model.get(), &json.ptr));
  check(siabf_model_summary(model.get(), &summary.ptr));
  write_file(fs::path(opt.out_dir) / "model.json", json.ptr);
  if (cv_table) {
    write_file(fs::path(opt.out_dir) / "cv_table.csv", cv_table.ptr);
    std::cout << cv_table.ptr;
  }
  std::cout << summary.ptr << "elapsed: " << elapsed.count() << " s\n"
            << "model written to "
            << (fs::path(opt.out_dir) / "model.json").string() << "\n";
  return 0;
}

int cmd_predict(const Options& opt) {
  siabf_model* raw = nullptr;
  const std::string text = read_file(opt.model_path);
  check(siabf_model_from_json(text.c_str(), &raw));
  const ModelPtr model(raw, &siabf_model_free);

  std::vector<double> values(opt.horizon);
  check(siabf_model_predict(model.get(), opt.horizon, values.data()));

  const double t_end = siabf_model_train_end(model.get());
  const double d = siabf_model_interval(model.get());
  std::ostringstream csv;
  csv << "time,prediction\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    csv << fmt17(t_end + static_cast<double>(k + 1) * d) << ','
        << fmt17(values[k]) << '\n';
  }
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "predictions.csv", csv.str());
  std::cout << values.size() << " predictions written to "
            << (fs::path(opt.out_dir) / "predictions.csv").string() << "\n";
  return 0;
}

int cmd_evaluate(const Options& opt) {
  const SeriesPtr pred =
      load_series(opt.pred_path, opt.time_col, opt.pred_col, false);
  const SeriesPtr truth =
      load_series(opt.truth_path, opt.time_col, opt.value_col, false);
  const std::size_t n = siabf_series_length(pred.get());
  if (n != siabf_series_length(truth.get())) {
    throw CliError{1, "LengthMismatch: " + std::to_string(n) +
                          " predictions vs " +
                          std::to_string(siabf_series_length(truth.get())) +
                          " truth rows"};
  }
  std::vector<double> p(n), y(n);
  check(siabf_series_values(pred.get(), p.data()));
  check(siabf_series_values(truth.get(), y.data()));

  siabf_metrics metrics{};
  check(siabf_evaluate(p.data(), y.data(), n, opt.mape_eps, &metrics));

  std::ostringstream json;
  json << "{\n  \"rmse\": " << fmt17(metrics.rmse)
       << ",\n  \"mae\": " << fmt17(metrics.mae) << ",\n  \"r2\": "
       << (metrics.r2_defined ? fmt17(metrics.r2) : std::string("null"))
       << ",\n  \"mape_median_pct\": " << fmt17(metrics.mape_median_pct)
       << "\n}\n";
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "metrics.json", json.str());

  std::cout << "rmse=" << metrics.rmse << " mae=" << metrics.mae << " r2=";
  if (metrics.r2_defined) {
    std::cout << metrics.r2;
  } else {
    std::cout << "undefined";
  }
  std::cout << " mape=" << metrics.mape_median_pct << "%\n";
  return 0;
}

int cmd_robustness(const Options& opt) {
  const SeriesPtr series =
      load_series(opt.input, opt.time_col, opt.value_col, true);
  const siabf_fit_options fit_options = make_fit_options(opt);
  siabf_robustness_options rob{};
  siabf_robustness_options_defaults(&rob);
  rob.train_fraction = opt.train_fraction;
  rob.deletion_fraction = opt.delete_frac;
  rob.noise_scale = opt.noise_scale;
  rob.seed = opt.seed;

  OwnedString report, traces;
  check(siabf_run_robustness(series.get(), &fit_options, &rob, &report.ptr,
                             &traces.ptr));
  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "robustness.json", report.ptr);
  write_file(fs::path(opt.out_dir) / "traces.csv", traces.ptr);
  std::cout << report.ptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIABF: spectral period discovery + sparse regression for "
               "interpretable long-horizon forecasting"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "input CSV file")->required();
    cmd->add_option("--time-col", opt.time_col, "time column name");
    cmd->add_option("--value-col", opt.value_col, "value column name");
    cmd->add_option("--out", opt.out_dir, "output directory");
  };
  auto add_fit_flags = [&](CLI::App* cmd) {
    cmd->add_option("--q", opt.q, "number of adaptive periods to extract");
    cmd->add_option("--lambda", opt.lambda, "L1 penalty weight");
    cmd->add_option("--cv-grid", opt.cv_grid,
                    "comma-separated lambda grid for cross-validation")
        ->delimiter(',');
    cmd->add_option("--cv-holdout", opt.cv_holdout,
                    "cross-validation holdout fraction");
    cmd->add_option("--solver", opt.solver, "solver: l1 or stlsq")
        ->check(CLI::IsMember({"l1", "stlsq"}));
    cmd->add_option("--threshold-eps", opt.threshold_eps,
                    "stlsq coefficient threshold");
    cmd->add_option("--trend-degree", opt.trend_degree,
                    "0 (none) or 1 (linear trend column)")
        ->check(CLI::Range(0, 1));
    cmd->add_flag("--no-intercept", opt.no_intercept,
                  "drop the intercept column");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "spectrum, sorting diagram, adaptive periods, suitability");
  add_io(analyze);
  analyze->add_option("--q", opt.q, "number of adaptive periods to extract");

  CLI::App* fit = app.add_subcommand("fit", "fit a sparse model");
  add_io(fit);
  add_fit_flags(fit);

  CLI::App* predict =
      app.add_subcommand("predict", "iteration-free long-horizon prediction");
  predict->add_option("--model", opt.model_path, "model JSON file")->required();
  predict->add_option("--horizon", opt.horizon, "steps to predict")
      ->required()
      ->check(CLI::PositiveNumber);
  predict->add_option("--out", opt.out_dir, "output directory");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score predictions against ground truth");
  evaluate->add_option("--pred", opt.pred_path, "predictions CSV")->required();
  evaluate->add_option("--truth", opt.truth_path, "ground-truth CSV")
      ->required();
  evaluate->add_option("--pred-col", opt.pred_col, "prediction column name");
  evaluate->add_option("--time-col", opt.time_col, "time column name");
  evaluate->add_option("--value-col", opt.value_col, "truth value column");
  evaluate->add_option("--mape-eps", opt.mape_eps,
                       "denominator guard for median-APE");
  evaluate->add_option("--out", opt.out_dir, "output directory");

  CLI::App* robustness = app.add_subcommand(
      "robustness", "clean-vs-corrupted training comparison");
  add_io(robustness);
  add_fit_flags(robustness);
  robustness->add_option("--train-fraction", opt.train_fraction,
                         "time-ordered training prefix fraction");
  robustness->add_option("--delete-frac", opt.delete_frac,
                         "fraction of training samples to delete");
  robustness->add_option("--noise-scale", opt.noise_scale,
                         "uniform noise half-width as a fraction of std");
  robustness->add_option("--seed", opt.seed, "corruption RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze)) return cmd_analyze(opt);
    if (app.got_subcommand(fit)) return cmd_fit(opt);
    if (app.got_subcommand(predict)) return cmd_predict(opt);
    if (app.got_subcommand(evaluate)) return cmd_evaluate(opt);
    if (app.got_subcommand(robustness)) return cmd_robustness(opt);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
