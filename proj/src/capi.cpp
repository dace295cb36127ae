#include "siabf/siabf.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "siabf/errors.hpp"
#include "siabf/forecast.hpp"
#include "siabf/model_io.hpp"
#include "siabf/reports.hpp"
#include "siabf/robustness.hpp"
#include "siabf/solver.hpp"
#include "siabf/timeseries.hpp"

struct siabf_series {
  siabf::TimeSeries impl;
};

struct siabf_analysis {
  siabf::Analysis impl;
};

struct siabf_model {
  siabf::SparseModel impl;
};

namespace {

thread_local std::string g_last_error;

siabf_status map_errc(siabf::Errc code) {
  using siabf::Errc;
  switch (code) {
    case Errc::MalformedFile: return SIABF_ERR_MALFORMED_FILE;
    case Errc::NonUniformSampling: return SIABF_ERR_NON_UNIFORM_SAMPLING;
    case Errc::TooShort: return SIABF_ERR_TOO_SHORT;
    case Errc::BoundaryGap: return SIABF_ERR_BOUNDARY_GAP;
    case Errc::ZeroVariance: return SIABF_ERR_ZERO_VARIANCE;
    case Errc::EmptySpec: return SIABF_ERR_EMPTY_SPEC;
    case Errc::DimensionMismatch: return SIABF_ERR_DIMENSION_MISMATCH;
    case Errc::SingularSystem: return SIABF_ERR_SINGULAR_SYSTEM;
    case Errc::InsufficientData: return SIABF_ERR_INSUFFICIENT_DATA;
    case Errc::DegenerateSpectrum: return SIABF_ERR_DEGENERATE_SPECTRUM;
    case Errc::LengthMismatch: return SIABF_ERR_LENGTH_MISMATCH;
    case Errc::InvalidArgument: return SIABF_ERR_INVALID_ARGUMENT;
    case Errc::Io: return SIABF_ERR_IO;
    case Errc::Internal: return SIABF_ERR_INTERNAL;
  }
  return SIABF_ERR_INTERNAL;
}

siabf_status fail(siabf_status status, const char* message) {
  g_last_error = message;
  return status;
}

/// Runs fn, translating C++ exceptions into status codes.
template <typename Fn>
siabf_status guarded(Fn&& fn) {
  try {
    fn();
    return SIABF_OK;
  } catch (const siabf::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SIABF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SIABF_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

siabf::FitOptions to_fit_options(const siabf_fit_options& options) {
  siabf::FitOptions out;
  out.top_period_count = options.top_period_count;
  out.include_intercept = options.include_intercept != 0;
  out.trend_degree = options.trend_degree;
  out.solver = options.solver == SIABF_SOLVER_STLSQ
                   ? siabf::SolverId::ThresholdedLeastSquares
                   : siabf::SolverId::L1CoordinateDescent;
  out.config.lambda = options.lambda;
  out.config.threshold_eps = options.threshold_eps;
  out.config.max_iterations = options.max_iterations;
  out.config.convergence_tol = options.convergence_tol;
  if (options.cv_grid && options.cv_grid_len > 0) {
    out.config.cv_grid.assign(options.cv_grid,
                              options.cv_grid + options.cv_grid_len);
  }
  out.config.cv_holdout_fraction = options.cv_holdout_fraction;
  return out;
}

}  // namespace

extern "C" {

const char* siabf_status_name(siabf_status status) {
  switch (status) {
    case SIABF_OK: return "ok";
    case SIABF_ERR_MALFORMED_FILE: return "malformed_file";
    case SIABF_ERR_NON_UNIFORM_SAMPLING: return "non_uniform_sampling";
    case SIABF_ERR_TOO_SHORT: return "too_short";
    case SIABF_ERR_BOUNDARY_GAP: return "boundary_gap";
    case SIABF_ERR_ZERO_VARIANCE: return "zero_variance";
    case SIABF_ERR_EMPTY_SPEC: return "empty_spec";
    case SIABF_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case SIABF_ERR_SINGULAR_SYSTEM: return "singular_system";
    case SIABF_ERR_INSUFFICIENT_DATA: return "insufficient_data";
    case SIABF_ERR_DEGENERATE_SPECTRUM: return "degenerate_spectrum";
    case SIABF_ERR_LENGTH_MISMATCH: return "length_mismatch";
    case SIABF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SIABF_ERR_IO: return "io";
    case SIABF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* siabf_last_error(void) { return g_last_error.c_str(); }

void siabf_string_free(char* text) { std::free(text); }

siabf_status siabf_series_from_csv(const char* path, const char* time_column,
                                   const char* value_column,
                                   siabf_series** out) {
  if (!path || !time_column || !value_column || !out) {
    return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = new siabf_series{siabf::ingest_csv(path, time_column, value_column)};
  });
}

siabf_status siabf_series_create(const double* values, size_t length,
                                 double start_time, double sample_interval,
                                 siabf_series** out) {
  if (!values || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new siabf_series{siabf::TimeSeries(
        std::vector<double>(values, values + length), start_time,
        sample_interval)};
  });
}

siabf_status siabf_series_interpolate_gaps(const siabf_series* series,
                                           siabf_series** out) {
  if (!series || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new siabf_series{siabf::interpolate_gaps(series->impl)};
  });
}

size_t siabf_series_length(const siabf_series* series) {
  return series ? series->impl.size() : 0;
}

double siabf_series_start_time(const siabf_series* series) {
  return series ? series->impl.start_time() : 0.0;
}

double siabf_series_interval(const siabf_series* series) {
  return series ? series->impl.sample_interval() : 0.0;
}

int siabf_series_has_gaps(const siabf_series* series) {
  return series && series->impl.has_gaps() ? 1 : 0;
}

siabf_status siabf_series_values(const siabf_series* series, double* buffer) {
  if (!series || !buffer) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& v = series->impl.values();
    std::memcpy(buffer, v.data(), v.size() * sizeof(double));
  });
}

siabf_status siabf_series_write_csv(const siabf_series* series,
                                    const char* path, const char* time_column,
                                    const char* value_column) {
  if (!series || !path || !time_column || !value_column) {
    return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    siabf::write_csv(path, series->impl, time_column, value_column);
  });
}

void siabf_series_free(siabf_series* series) { delete series; }

siabf_status siabf_analyze(const siabf_series* series, int top_period_count,
                           siabf_analysis** out) {
  if (!series || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new siabf_analysis{siabf::analyze(series->impl, top_period_count)};
  });
}

double siabf_analysis_index(const siabf_analysis* analysis) {
  return analysis ? analysis->impl.report.quasi_periodic_index : -1.0;
}

const char* siabf_analysis_suitability(const siabf_analysis* analysis) {
  return analysis ? siabf::suitability_name(analysis->impl.suitability)
                  : "unknown";
}

siabf_status siabf_analysis_to_json(const siabf_analysis* analysis,
                                    char** out) {
  if (!analysis || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(siabf::analysis_to_json(analysis->impl)); });
}

siabf_status siabf_analysis_sorting_csv(const siabf_analysis* analysis,
                                        char** out) {
  if (!analysis || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = copy_string(siabf::sorting_diagram_csv(analysis->impl)); });
}

siabf_status siabf_analysis_periods_csv(const siabf_analysis* analysis,
                                        char** out) {
  if (!analysis || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = copy_string(siabf::period_table_csv(analysis->impl)); });
}

void siabf_analysis_free(siabf_analysis* analysis) { delete analysis; }

void siabf_fit_options_defaults(siabf_fit_options* options) {
  if (!options) return;
  options->top_period_count = 50;
  options->include_intercept = 1;
  options->trend_degree = 0;
  options->solver = SIABF_SOLVER_L1;
  options->lambda = 5e-4;
  options->threshold_eps = 1e-2;
  options->max_iterations = 10000;
  options->convergence_tol = 1e-8;
  options->cv_grid = nullptr;
  options->cv_grid_len = 0;
  options->cv_holdout_fraction = 0.2;
}

siabf_status siabf_fit(const siabf_series* series,
                       const siabf_fit_options* options, siabf_model** out,
                       char** cv_table_csv) {
  if (!series || !options || !out) {
    return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const siabf::FitOptions fit_options = to_fit_options(*options);
    siabf::CrossValidationResult cv;
    *out = new siabf_model{siabf::fit(series->impl, fit_options, &cv)};
    if (cv_table_csv) {
      *cv_table_csv = cv.table.empty()
                          ? nullptr
                          : copy_string(siabf::cv_table_csv(cv));
    }
  });
}

siabf_status siabf_model_predict(const siabf_model* model,
                                 size_t horizon_steps, double* out_values) {
  if (!model || !out_values) {
    return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const std::vector<double> values = siabf::predict(model->impl, horizon_steps);
    std::memcpy(out_values, values.data(), values.size() * sizeof(double));
  });
}

siabf_status siabf_model_to_json(const siabf_model* model, char** out) {
  if (!model || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = copy_string(siabf::model_to_json(model->impl)); });
}

siabf_status siabf_model_from_json(const char* text, siabf_model** out) {
  if (!text || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = new siabf_model{siabf::model_from_json(text)}; });
}

siabf_status siabf_model_summary(const siabf_model* model, char** out) {
  if (!model || !out) return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const siabf::SparseModel& m = model->impl;
    std::string text;
    char line[160];
    std::snprintf(line, sizeof(line),
                  "quasi-periodic index: %.4f (%s)\nlambda: %g  solver: %s\n"
                  "nonzero coefficients: %d of %zu\n",
                  m.spectrum.quasi_periodic_index,
                  siabf::suitability_name(m.spectrum.suitability),
                  m.coefficients.lambda_used,
                  siabf::solver_name(m.coefficients.solver_id),
                  m.coefficients.nonzero_count, m.spec.column_count());
    text += line;
    for (Eigen::Index j = 0; j < m.coefficients.xi.size(); ++j) {
      if (m.coefficients.xi[j] == 0.0) continue;
      std::snprintf(line, sizeof(line), "  %-28s % .6g\n",
                    m.spec.column_labels[static_cast<std::size_t>(j)].c_str(),
                    m.coefficients.xi[j]);
      text += line;
    }
    *out = copy_string(text);
  });
}

double siabf_model_train_end(const siabf_model* model) {
  return model ? model->impl.train_end : 0.0;
}

double siabf_model_interval(const siabf_model* model) {
  return model ? model->impl.sample_interval : 0.0;
}

double siabf_model_quasi_periodic_index(const siabf_model* model) {
  return model ? model->impl.spectrum.quasi_periodic_index : -1.0;
}

double siabf_model_lambda_used(const siabf_model* model) {
  return model ? model->impl.coefficients.lambda_used : 0.0;
}

void siabf_model_free(siabf_model* model) { delete model; }

siabf_status siabf_evaluate(const double* predictions, const double* truth,
                            size_t length, double mape_epsilon,
                            siabf_metrics* out) {
  if (!predictions || !truth || !out) {
    return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const siabf::EvaluationReport report =
        siabf::evaluate({predictions, length}, {truth, length}, mape_epsilon);
    out->rmse = report.rmse;
    out->mae = report.mae;
    out->r2 = report.r2;
    out->r2_defined = report.r2_defined ? 1 : 0;
    out->mape_median_pct = report.mape_median_pct;
  });
}

void siabf_robustness_options_defaults(siabf_robustness_options* options) {
  if (!options) return;
  options->train_fraction = 0.8;
  options->deletion_fraction = 0.05;
  options->noise_scale = 0.05;
  options->seed = 0;
}

siabf_status siabf_run_robustness(const siabf_series* series,
                                  const siabf_fit_options* fit_options,
                                  const siabf_robustness_options* options,
                                  char** report_json, char** traces_csv) {
  if (!series || !fit_options || !options || !report_json) {
    return fail(SIABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    siabf::CorruptionConfig corruption;
    corruption.deletion_fraction = options->deletion_fraction;
    corruption.noise_scale = options->noise_scale;
    corruption.rng_seed = options->seed;
    const siabf::RobustnessReport report =
        siabf::run_robustness(series->impl, options->train_fraction,
                              to_fit_options(*fit_options), corruption);
    *report_json = copy_string(siabf::robustness_to_json(report));
    if (traces_csv) {
      *traces_csv = copy_string(siabf::robustness_traces_csv(report));
    }
  });
}

}  // extern "C"
