#include "siabf/robustness.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "siabf/errors.hpp"

namespace siabf {

namespace {

double population_std(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return std::sqrt(var / n);
}

}  // namespace

TimeSeries corrupt(const TimeSeries& series, const CorruptionConfig& config) {
  if (series.has_gaps()) {
    throw Error(Errc::InvalidArgument, "corrupt requires a gap-free series");
  }
  if (config.deletion_fraction < 0.0 || config.deletion_fraction > 0.5) {
    throw Error(Errc::InvalidArgument, "deletion fraction must be in [0, 0.5]");
  }
  if (config.noise_scale < 0.0) {
    throw Error(Errc::InvalidArgument, "noise scale must be nonnegative");
  }

  const std::size_t n = series.size();
  const auto delete_count = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * config.deletion_fraction));

  std::mt19937_64 rng(config.rng_seed);

  TimeSeries result = series;
  if (delete_count > 0) {
    // Endpoints stay so the gaps remain interpolatable.
    std::vector<std::size_t> interior(n - 2);
    std::iota(interior.begin(), interior.end(), 1u);
    // Partial Fisher-Yates: the first delete_count entries are the sample.
    for (std::size_t i = 0; i < delete_count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, interior.size() - 1);
      std::swap(interior[i], interior[pick(rng)]);
    }
    std::vector<double> values = series.values();
    std::vector<bool> gaps(n, false);
    for (std::size_t i = 0; i < delete_count; ++i) {
      values[interior[i]] = std::numeric_limits<double>::quiet_NaN();
      gaps[interior[i]] = true;
    }
    result = interpolate_gaps(TimeSeries(std::move(values), series.start_time(),
                                         series.sample_interval(),
                                         std::move(gaps)));
  }

  if (config.noise_scale > 0.0) {
    const double half_width = config.noise_scale * population_std(series.values());
    std::uniform_real_distribution<double> noise(-half_width, half_width);
    std::vector<double> values = result.values();
    for (double& v : values) v += noise(rng);
    result = TimeSeries(std::move(values), series.start_time(),
                        series.sample_interval());
  }
  return result;
}

RobustnessReport run_robustness(const TimeSeries& series, double train_fraction,
                                const FitOptions& fit_options,
                                const CorruptionConfig& corruption) {
  if (series.has_gaps()) {
    throw Error(Errc::InvalidArgument, "run_robustness requires a gap-free series");
  }
  const std::size_t n = series.size();
  const auto n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * train_fraction));
  if (n_train < 2 || n - n_train < 2) {
    throw Error(Errc::InsufficientData,
                "split must leave at least 2 points on each side");
  }

  const std::vector<double> train_values(series.values().begin(),
                                         series.values().begin() + n_train);
  const TimeSeries train(train_values, series.start_time(),
                         series.sample_interval());
  const std::span<const double> truth(series.values().data() + n_train,
                                      n - n_train);

  const TimeSeries treated_train = corrupt(train, corruption);

  const SparseModel control_model = fit(train, fit_options);
  const SparseModel treated_model = fit(treated_train, fit_options);

  const std::vector<double> control_pred = predict(control_model, truth.size());
  const std::vector<double> treated_pred = predict(treated_model, truth.size());

  constexpr double kMapeEpsilon = 1e-8;
  RobustnessReport report;
  report.control = evaluate(control_pred, truth, kMapeEpsilon);
  report.treated = evaluate(treated_pred, truth, kMapeEpsilon);
  report.rmse_delta = report.treated.rmse - report.control.rmse;
  report.mae_delta = report.treated.mae - report.control.mae;
  report.r2_delta = report.treated.r2 - report.control.r2;
  report.mape_delta =
      report.treated.mape_median_pct - report.control.mape_median_pct;
  report.verdict = report.treated.rmse <= report.control.rmse * 1.1;
  report.test_times.resize(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    report.test_times[k] = series.time_at(n_train + k);
  }
  report.truth.assign(truth.begin(), truth.end());
  report.control_predictions = control_pred;
  report.treated_predictions = treated_pred;
  return report;
}

}  // namespace siabf
