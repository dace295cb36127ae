#include "siabf/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "siabf/errors.hpp"

namespace siabf {

SparseModel fit(const TimeSeries& series, const FitOptions& options,
                CrossValidationResult* cv_out) {
  if (series.has_gaps()) {
    throw Error(Errc::InvalidArgument,
                "fit requires a gap-free series; interpolate first");
  }

  auto [scaled, stats] = standardize(series);

  SpectrumReport report = dft_spectrum(scaled);
  sorting_diagram(report);
  report.quasi_periodic_index = quasi_periodic_index(report);

  const AdaptivePeriods periods =
      adaptive_periods(report, options.top_period_count);

  BasisSpec spec =
      build_spec(periods, options.include_intercept, options.trend_degree);
  if (spec.trend_degree == 1) {
    spec.trend_window = {series.start_time(), series.end_time()};
  }

  const std::vector<double> grid = series.time_grid();
  const DesignMatrix design = evaluate(spec, grid);
  const std::span<const double> target(scaled.values());

  FitConfig config = options.config;
  if (!config.cv_grid.empty()) {
    const CrossValidationResult cv = cross_validate_lambda(design, target, config);
    config.lambda = cv.best_lambda;
    if (cv_out) *cv_out = cv;
  } else if (cv_out) {
    *cv_out = {};
  }

  SparseModel model;
  model.spec = std::move(spec);
  model.coefficients = options.solver == SolverId::L1CoordinateDescent
                           ? fit_l1(design, target, config)
                           : fit_stlsq(design, target, config);
  model.coefficients.objective_history.clear();  // transient diagnostics
  model.stats = stats;
  model.train_start = series.start_time();
  model.train_end = series.end_time();
  model.sample_interval = series.sample_interval();
  model.top_period_count = options.top_period_count;
  model.spectrum.top_periods = periods.periods;
  model.spectrum.top_amplitudes = periods.source_amplitudes;
  model.spectrum.quasi_periodic_index = report.quasi_periodic_index;
  model.spectrum.suitability = classify_suitability(report.quasi_periodic_index);
  return model;
}

std::vector<double> predict(const SparseModel& model, std::size_t horizon_steps) {
  if (horizon_steps < 1) {
    throw Error(Errc::InvalidArgument, "horizon must be at least 1 step");
  }
  if (model.coefficients.xi.size() !=
      static_cast<Eigen::Index>(model.spec.column_count())) {
    throw Error(Errc::DimensionMismatch,
                "coefficient length does not match the basis spec");
  }
  std::vector<double> grid(horizon_steps);
  for (std::size_t k = 0; k < horizon_steps; ++k) {
    grid[k] = model.train_end +
              static_cast<double>(k + 1) * model.sample_interval;
  }
  if (!std::isfinite(grid.back())) {
    throw Error(Errc::InvalidArgument, "horizon overflows the time axis");
  }
  const DesignMatrix design = evaluate(model.spec, grid);
  const Eigen::VectorXd scaled = design.entries * model.coefficients.xi;
  return destandardize(std::span<const double>(scaled.data(),
                                               static_cast<std::size_t>(scaled.size())),
                       model.stats);
}

EvaluationReport evaluate(std::span<const double> predictions,
                          std::span<const double> truth, double mape_epsilon) {
  if (predictions.size() != truth.size()) {
    throw Error(Errc::LengthMismatch,
                "predictions and truth have different lengths");
  }
  if (predictions.empty()) {
    throw Error(Errc::LengthMismatch, "nothing to evaluate");
  }
  if (!(mape_epsilon > 0.0)) {
    throw Error(Errc::InvalidArgument, "mape epsilon must be positive");
  }

  const auto n = static_cast<double>(truth.size());
  double ss_res = 0.0, abs_sum = 0.0, truth_mean = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double r = truth[i] - predictions[i];
    ss_res += r * r;
    abs_sum += std::abs(r);
    truth_mean += truth[i];
  }
  truth_mean /= n;
  double ss_tot = 0.0;
  for (double y : truth) ss_tot += (y - truth_mean) * (y - truth_mean);

  EvaluationReport report;
  report.rmse = std::sqrt(ss_res / n);
  report.mae = abs_sum / n;
  if (ss_tot > 0.0) {
    report.r2 = 1.0 - ss_res / ss_tot;
  } else {
    report.r2_defined = false;
    report.r2 = std::numeric_limits<double>::quiet_NaN();
  }

  std::vector<double> ape(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ape[i] = std::abs(truth[i] - predictions[i]) /
             (std::abs(truth[i]) + mape_epsilon);
  }
  std::sort(ape.begin(), ape.end());
  const std::size_t mid = ape.size() / 2;
  const double median = ape.size() % 2 == 1
                            ? ape[mid]
                            : 0.5 * (ape[mid - 1] + ape[mid]);
  report.mape_median_pct = 100.0 * median;
  return report;
}

}  // namespace siabf
