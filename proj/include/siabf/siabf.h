/*
 * siabf - sparse system identification with adaptive Fourier basis functions.
 *
 * C interface to the shared library. All objects are opaque handles owned
 * by the library; every fallible call returns a status code and reports
 * details through siabf_last_error(). Strings returned through char** out
 * parameters must be released with siabf_string_free().
 */
#ifndef SIABF_H
#define SIABF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum siabf_status {
  SIABF_OK = 0,
  SIABF_ERR_MALFORMED_FILE,
  SIABF_ERR_NON_UNIFORM_SAMPLING,
  SIABF_ERR_TOO_SHORT,
  SIABF_ERR_BOUNDARY_GAP,
  SIABF_ERR_ZERO_VARIANCE,
  SIABF_ERR_EMPTY_SPEC,
  SIABF_ERR_DIMENSION_MISMATCH,
  SIABF_ERR_SINGULAR_SYSTEM,
  SIABF_ERR_INSUFFICIENT_DATA,
  SIABF_ERR_DEGENERATE_SPECTRUM,
  SIABF_ERR_LENGTH_MISMATCH,
  SIABF_ERR_INVALID_ARGUMENT,
  SIABF_ERR_IO,
  SIABF_ERR_INTERNAL
} siabf_status;

typedef struct siabf_series siabf_series;
typedef struct siabf_analysis siabf_analysis;
typedef struct siabf_model siabf_model;

const char* siabf_status_name(siabf_status status);

/* Thread-local message describing the most recent failure in this thread. */
const char* siabf_last_error(void);

void siabf_string_free(char* text);

/* ---- time series ------------------------------------------------------ */

/* CSV: UTF-8, header row, '.' decimal separator, rows sorted by time.
 * Missing rows become gaps; the sampling interval is inferred from the
 * median consecutive timestamp difference. */
siabf_status siabf_series_from_csv(const char* path, const char* time_column,
                                   const char* value_column,
                                   siabf_series** out);

siabf_status siabf_series_create(const double* values, size_t length,
                                 double start_time, double sample_interval,
                                 siabf_series** out);

siabf_status siabf_series_interpolate_gaps(const siabf_series* series,
                                           siabf_series** out);

size_t siabf_series_length(const siabf_series* series);
double siabf_series_start_time(const siabf_series* series);
double siabf_series_interval(const siabf_series* series);
int siabf_series_has_gaps(const siabf_series* series);

/* buffer must hold siabf_series_length() doubles; gaps are NaN. */
siabf_status siabf_series_values(const siabf_series* series, double* buffer);

siabf_status siabf_series_write_csv(const siabf_series* series,
                                    const char* path, const char* time_column,
                                    const char* value_column);

void siabf_series_free(siabf_series* series);

/* ---- spectral analysis ------------------------------------------------- */

/* DFT spectrum, sorting diagram, top-Q adaptive periods, and the
 * quasi-periodic index, in one pass over a gap-free series. */
siabf_status siabf_analyze(const siabf_series* series, int top_period_count,
                           siabf_analysis** out);

double siabf_analysis_index(const siabf_analysis* analysis);

/* "model_based_favored" (index >= 0.8), "data_driven_favored" (<= 0.5),
 * or "contested". */
const char* siabf_analysis_suitability(const siabf_analysis* analysis);

siabf_status siabf_analysis_to_json(const siabf_analysis* analysis, char** out);

/* Two-column CSV (rank, amplitude) of the sorting diagram. */
siabf_status siabf_analysis_sorting_csv(const siabf_analysis* analysis,
                                        char** out);

/* Top-period table: rank, bin, period, frequency, amplitude. */
siabf_status siabf_analysis_periods_csv(const siabf_analysis* analysis,
                                        char** out);

void siabf_analysis_free(siabf_analysis* analysis);

/* ---- fitting and prediction -------------------------------------------- */

typedef struct siabf_fit_options {
  int top_period_count;   /* Q, default 50 */
  int include_intercept;  /* default 1 */
  int trend_degree;       /* 0 or 1, default 0 */
  int solver;             /* SIABF_SOLVER_L1 or SIABF_SOLVER_STLSQ */
  double lambda;          /* L1 penalty, default 5e-4 */
  double threshold_eps;   /* STLSQ threshold, default 1e-2 */
  int max_iterations;     /* default 10000 sweeps */
  double convergence_tol; /* default 1e-8 */
  const double* cv_grid;  /* optional lambda grid; overrides lambda */
  size_t cv_grid_len;
  double cv_holdout_fraction; /* default 0.2 */
} siabf_fit_options;

#define SIABF_SOLVER_L1 0
#define SIABF_SOLVER_STLSQ 1

void siabf_fit_options_defaults(siabf_fit_options* options);

/* Fits the full pipeline on a gap-free series. When a cv grid is given and
 * cv_table_csv is non-NULL, the (lambda, holdout RMSE) table is returned
 * as CSV text. */
siabf_status siabf_fit(const siabf_series* series,
                       const siabf_fit_options* options, siabf_model** out,
                       char** cv_table_csv);

/* Evaluates the model at the horizon_steps sample instants following the
 * training window; out_values must hold horizon_steps doubles. */
siabf_status siabf_model_predict(const siabf_model* model,
                                 size_t horizon_steps, double* out_values);

siabf_status siabf_model_to_json(const siabf_model* model, char** out);
siabf_status siabf_model_from_json(const char* text, siabf_model** out);

/* Human-readable table of the nonzero coefficients. */
siabf_status siabf_model_summary(const siabf_model* model, char** out);

double siabf_model_train_end(const siabf_model* model);
double siabf_model_interval(const siabf_model* model);
double siabf_model_quasi_periodic_index(const siabf_model* model);
double siabf_model_lambda_used(const siabf_model* model);

void siabf_model_free(siabf_model* model);

/* ---- evaluation --------------------------------------------------------- */

typedef struct siabf_metrics {
  double rmse;
  double mae;
  double r2;              /* NaN when r2_defined is 0 */
  int r2_defined;         /* 0 when the truth is constant */
  double mape_median_pct; /* median of |y-yhat|/(|y|+eps), percent */
} siabf_metrics;

siabf_status siabf_evaluate(const double* predictions, const double* truth,
                            size_t length, double mape_epsilon,
                            siabf_metrics* out);

/* ---- robustness --------------------------------------------------------- */

typedef struct siabf_robustness_options {
  double train_fraction;    /* time-ordered prefix, default 0.8 */
  double deletion_fraction; /* default 0.05 */
  double noise_scale;       /* fraction of training std, default 0.05 */
  uint64_t seed;
} siabf_robustness_options;

void siabf_robustness_options_defaults(siabf_robustness_options* options);

/* Clean-vs-corrupted comparison on the same test horizon. report_json gets
 * both metric sets, deltas, and the verdict; traces_csv (optional) gets
 * time, truth, and both prediction traces. */
siabf_status siabf_run_robustness(const siabf_series* series,
                                  const siabf_fit_options* fit_options,
                                  const siabf_robustness_options* options,
                                  char** report_json, char** traces_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SIABF_H */
