#include "siabf/reports.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace siabf {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json metrics_json(const EvaluationReport& report) {
  json j = {
      {"rmse", report.rmse},
      {"mae", report.mae},
      {"mape_median_pct", report.mape_median_pct},
  };
  if (report.r2_defined) {
    j["r2"] = report.r2;
  } else {
    j["r2"] = nullptr;
    j["r2_note"] = "undefined: truth is constant";
  }
  return j;
}

}  // namespace

Analysis analyze(const TimeSeries& series, int top_period_count) {
  // Standardize first, matching the fit pipeline; otherwise a large mean
  // dominates the DC bin and skews the index.
  auto [scaled, stats] = standardize(series);
  Analysis analysis;
  analysis.report = dft_spectrum(scaled);
  sorting_diagram(analysis.report);
  analysis.report.quasi_periodic_index = quasi_periodic_index(analysis.report);
  analysis.periods = adaptive_periods(analysis.report, top_period_count);
  analysis.suitability =
      classify_suitability(analysis.report.quasi_periodic_index);
  return analysis;
}

std::string analysis_to_json(const Analysis& analysis) {
  json doc = {
      {"format", "siabf-spectrum"},
      {"version", 1},
      {"bin_count", analysis.report.amplitudes.size()},
      {"amplitudes", analysis.report.amplitudes},
      {"frequencies", analysis.report.frequencies},
      {"sorted_ranks", analysis.report.sorted_ranks},
      {"quasi_periodic_index", analysis.report.quasi_periodic_index},
      {"suitability", suitability_name(analysis.suitability)},
      {"adaptive_periods",
       {{"periods", analysis.periods.periods},
        {"source_amplitudes", analysis.periods.source_amplitudes},
        {"source_bins", analysis.periods.source_bins}}},
  };
  return doc.dump(2) + "\n";
}

std::string sorting_diagram_csv(const Analysis& analysis) {
  std::ostringstream out;
  out << "rank,amplitude\n";
  for (std::size_t i = 0; i < analysis.report.sorted_ranks.size(); ++i) {
    out << (i + 1) << ','
        << fmt(analysis.report.amplitudes[analysis.report.sorted_ranks[i]])
        << '\n';
  }
  return out.str();
}

std::string period_table_csv(const Analysis& analysis) {
  std::ostringstream out;
  out << "rank,bin,period,frequency,amplitude\n";
  for (std::size_t i = 0; i < analysis.periods.periods.size(); ++i) {
    const std::size_t bin = analysis.periods.source_bins[i];
    out << (i + 1) << ',' << bin << ',' << fmt(analysis.periods.periods[i])
        << ',' << fmt(analysis.report.frequencies[bin]) << ','
        << fmt(analysis.periods.source_amplitudes[i]) << '\n';
  }
  return out.str();
}

std::string metrics_to_json(const EvaluationReport& report) {
  return metrics_json(report).dump(2) + "\n";
}

std::string robustness_to_json(const RobustnessReport& report) {
  json doc = {
      {"format", "siabf-robustness"},
      {"version", 1},
      {"control", metrics_json(report.control)},
      {"treated", metrics_json(report.treated)},
      {"deltas",
       {{"rmse", report.rmse_delta},
        {"mae", report.mae_delta},
        {"r2", report.control.r2_defined && report.treated.r2_defined
                   ? json(report.r2_delta)
                   : json(nullptr)},
        {"mape_median_pct", report.mape_delta}}},
      {"verdict_not_significantly_weaker", report.verdict},
  };
  return doc.dump(2) + "\n";
}

std::string robustness_traces_csv(const RobustnessReport& report) {
  std::ostringstream out;
  out << "time,truth,control_prediction,treated_prediction\n";
  for (std::size_t i = 0; i < report.test_times.size(); ++i) {
    out << fmt(report.test_times[i]) << ',' << fmt(report.truth[i]) << ','
        << fmt(report.control_predictions[i]) << ','
        << fmt(report.treated_predictions[i]) << '\n';
  }
  return out.str();
}

std::string cv_table_csv(const CrossValidationResult& cv) {
  std::ostringstream out;
  out << "lambda,holdout_rmse\n";
  for (const auto& [lambda, rmse] : cv.table) {
    out << fmt(lambda) << ',' << fmt(rmse) << '\n';
  }
  return out.str();
}

}  // namespace siabf
