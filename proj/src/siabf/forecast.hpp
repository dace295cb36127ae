#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "siabf/basis.hpp"
#include "siabf/solver.hpp"
#include "siabf/spectrum.hpp"
#include "siabf/timeseries.hpp"

namespace siabf {

/// Spectral provenance carried with a fitted model.
struct SpectrumSummary {
  std::vector<double> top_periods;
  std::vector<double> top_amplitudes;
  double quasi_periodic_index = 0.0;
  Suitability suitability = Suitability::Contested;
};

/// The deployable forecaster: a pure function of time.
struct SparseModel {
  BasisSpec spec;
  SparseCoefficients coefficients;
  StandardizationStats stats;
  double train_start = 0.0;
  double train_end = 0.0;
  double sample_interval = 1.0;
  int top_period_count = 0;  // the Q used for period extraction
  SpectrumSummary spectrum;
};

struct FitOptions {
  int top_period_count = 50;
  bool include_intercept = true;
  int trend_degree = 0;
  SolverId solver = SolverId::L1CoordinateDescent;
  FitConfig config;
};

/// Full pipeline on a gap-free series: standardize, spectrum, period
/// extraction, dictionary build, sparse solve.
SparseModel fit(const TimeSeries& series, const FitOptions& options,
                CrossValidationResult* cv_out = nullptr);

/// Evaluates the model at the next horizon_steps sample instants after the
/// training window. Never consults observed values; step k depends only on
/// the model and k.
std::vector<double> predict(const SparseModel& model, std::size_t horizon_steps);

struct EvaluationReport {
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
  bool r2_defined = true;  // false when the truth is constant
  double mape_median_pct = 0.0;
  double elapsed_seconds = 0.0;
};

EvaluationReport evaluate(std::span<const double> predictions,
                          std::span<const double> truth, double mape_epsilon);

}  // namespace siabf
