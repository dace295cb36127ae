#pragma once

#include <cstdint>

#include "siabf/forecast.hpp"
#include "siabf/timeseries.hpp"

namespace siabf {

struct CorruptionConfig {
  double deletion_fraction = 0.05;  // of series length, interior samples only
  double noise_scale = 0.05;        // uniform noise half-width as a fraction of std
  std::uint64_t rng_seed = 0;
};

/// Deletes floor(N*fraction) random interior samples, re-interpolates them,
/// then adds uniform noise on [-a, a] with a = noise_scale * std(input) to
/// every sample. Length, start time, and interval are preserved.
TimeSeries corrupt(const TimeSeries& series, const CorruptionConfig& config);

struct RobustnessReport {
  EvaluationReport control;
  EvaluationReport treated;
  double rmse_delta = 0.0;
  double mae_delta = 0.0;
  double r2_delta = 0.0;
  double mape_delta = 0.0;
  bool verdict = false;  // treated RMSE <= control RMSE * 1.1
  // Per-group prediction traces over the test horizon, for plotting.
  std::vector<double> test_times;
  std::vector<double> truth;
  std::vector<double> control_predictions;
  std::vector<double> treated_predictions;
};

/// Fits on the clean and corrupted training prefix, predicts the same test
/// horizon, and scores both against the uncorrupted tail.
RobustnessReport run_robustness(const TimeSeries& series, double train_fraction,
                                const FitOptions& fit_options,
                                const CorruptionConfig& corruption);

}  // namespace siabf
