#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "siabf/basis.hpp"

namespace siabf {

enum class SolverId {
  L1CoordinateDescent,
  ThresholdedLeastSquares,
};

const char* solver_name(SolverId id);
SolverId solver_from_name(const std::string& name);

struct FitConfig {
  double lambda = 5e-4;
  double threshold_eps = 1e-2;
  int max_iterations = 10000;
  double convergence_tol = 1e-8;
  std::vector<double> cv_grid;
  double cv_holdout_fraction = 0.2;
};

struct SparseCoefficients {
  Eigen::VectorXd xi;
  int nonzero_count = 0;
  double lambda_used = 0.0;
  SolverId solver_id = SolverId::L1CoordinateDescent;
  bool converged = true;
  bool underdetermined = false;   // n < p at fit time
  bool singular_active_set = false;  // STLSQ fell back to minimum-norm
  // Penalized objective value after each full sweep (L1 solver only).
  std::vector<double> objective_history;
};

/// Minimizes (1/(2n))*||y - design*xi||^2 + lambda*||xi||_1 by cyclic
/// coordinate descent with closed-form soft-threshold updates.
SparseCoefficients fit_l1(const DesignMatrix& design,
                          std::span<const double> target,
                          const FitConfig& config);

/// Alternates least squares on the active set with zeroing of entries
/// whose magnitude is at most threshold_eps, until the set is stable.
SparseCoefficients fit_stlsq(const DesignMatrix& design,
                             std::span<const double> target,
                             const FitConfig& config);

struct CrossValidationResult {
  double best_lambda = 0.0;
  std::vector<std::pair<double, double>> table;  // (lambda, holdout RMSE)
};

/// Time-ordered split: the leading rows fit, the trailing fraction scores.
/// Ties on holdout RMSE prefer the larger (sparser) lambda.
CrossValidationResult cross_validate_lambda(const DesignMatrix& design,
                                            std::span<const double> target,
                                            const FitConfig& config);

}  // namespace siabf
