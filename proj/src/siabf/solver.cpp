#include "siabf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "siabf/errors.hpp"

namespace siabf {

namespace {

void check_dimensions(const DesignMatrix& design, std::span<const double> target) {
  if (static_cast<std::size_t>(design.entries.rows()) != target.size()) {
    throw Error(Errc::DimensionMismatch,
                "design has " + std::to_string(design.entries.rows()) +
                    " rows but target has " + std::to_string(target.size()));
  }
  for (double v : target) {
    if (!std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "target contains a non-finite value");
    }
  }
}

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

int count_nonzero(const Eigen::VectorXd& xi) {
  int count = 0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    if (xi[i] != 0.0) ++count;
  }
  return count;
}

}  // namespace

const char* solver_name(SolverId id) {
  switch (id) {
    case SolverId::L1CoordinateDescent: return "l1";
    case SolverId::ThresholdedLeastSquares: return "stlsq";
  }
  return "unknown";
}

SolverId solver_from_name(const std::string& name) {
  if (name == "l1") return SolverId::L1CoordinateDescent;
  if (name == "stlsq") return SolverId::ThresholdedLeastSquares;
  throw Error(Errc::InvalidArgument, "unknown solver '" + name + "'");
}

SparseCoefficients fit_l1(const DesignMatrix& design,
                          std::span<const double> target,
                          const FitConfig& config) {
  check_dimensions(design, target);
  if (!(config.convergence_tol > 0.0) || config.max_iterations < 1) {
    throw Error(Errc::InvalidArgument, "bad convergence settings");
  }
  if (config.lambda < 0.0) {
    throw Error(Errc::InvalidArgument, "lambda must be nonnegative");
  }

  const Eigen::MatrixXd& theta = design.entries;
  const auto n = theta.rows();
  const auto p = theta.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  const Eigen::Map<const Eigen::VectorXd> y(target.data(), n);

  // Per-column mean squares; a zero-norm column keeps a zero coefficient.
  Eigen::VectorXd col_scale(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    col_scale[j] = theta.col(j).squaredNorm() * inv_n;
  }

  SparseCoefficients result;
  result.xi = Eigen::VectorXd::Zero(p);
  result.lambda_used = config.lambda;
  result.solver_id = SolverId::L1CoordinateDescent;
  result.underdetermined = n < p;

  Eigen::VectorXd residual = y;
  result.converged = false;
  for (int sweep = 0; sweep < config.max_iterations; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col_scale[j] == 0.0) continue;
      const double old = result.xi[j];
      const double rho = theta.col(j).dot(residual) * inv_n + col_scale[j] * old;
      const double updated = soft_threshold(rho, config.lambda) / col_scale[j];
      if (updated != old) {
        residual.noalias() -= theta.col(j) * (updated - old);
        result.xi[j] = updated;
      }
      max_change = std::max(max_change, std::abs(updated - old));
    }
    result.objective_history.push_back(
        0.5 * inv_n * residual.squaredNorm() +
        config.lambda * result.xi.lpNorm<1>());
    if (max_change < config.convergence_tol) {
      result.converged = true;
      break;
    }
  }
  result.nonzero_count = count_nonzero(result.xi);
  return result;
}

SparseCoefficients fit_stlsq(const DesignMatrix& design,
                             std::span<const double> target,
                             const FitConfig& config) {
  check_dimensions(design, target);
  if (config.threshold_eps < 0.0) {
    throw Error(Errc::InvalidArgument, "threshold_eps must be nonnegative");
  }

  const Eigen::MatrixXd& theta = design.entries;
  const auto n = theta.rows();
  const auto p = theta.cols();
  const Eigen::Map<const Eigen::VectorXd> y(target.data(), n);

  SparseCoefficients result;
  result.xi = Eigen::VectorXd::Zero(p);
  result.lambda_used = 0.0;
  result.solver_id = SolverId::ThresholdedLeastSquares;
  result.underdetermined = n < p;

  std::vector<Eigen::Index> active(p);
  for (Eigen::Index j = 0; j < p; ++j) active[j] = j;

  while (!active.empty()) {
    Eigen::MatrixXd sub(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t c = 0; c < active.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = theta.col(active[c]);
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(sub,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.rank() < sub.cols()) result.singular_active_set = true;
    const Eigen::VectorXd sol = svd.solve(y);  // minimum-norm when deficient

    std::vector<Eigen::Index> kept;
    result.xi.setZero();
    for (std::size_t c = 0; c < active.size(); ++c) {
      const double value = sol[static_cast<Eigen::Index>(c)];
      if (std::abs(value) > config.threshold_eps) {
        result.xi[active[c]] = value;
        kept.push_back(active[c]);
      }
    }
    if (kept.size() == active.size()) break;
    active = std::move(kept);
  }

  result.nonzero_count = count_nonzero(result.xi);
  return result;
}

CrossValidationResult cross_validate_lambda(const DesignMatrix& design,
                                            std::span<const double> target,
                                            const FitConfig& config) {
  check_dimensions(design, target);
  if (config.cv_grid.empty()) {
    throw Error(Errc::InvalidArgument, "cross-validation grid is empty");
  }
  if (!(config.cv_holdout_fraction > 0.0 && config.cv_holdout_fraction <= 0.5)) {
    throw Error(Errc::InvalidArgument, "holdout fraction must be in (0, 0.5]");
  }

  const auto n = design.entries.rows();
  const auto n_holdout = static_cast<Eigen::Index>(
      std::floor(static_cast<double>(n) * config.cv_holdout_fraction));
  const Eigen::Index n_fit = n - n_holdout;
  if (n_holdout < 1 || n_fit < 1) {
    throw Error(Errc::InsufficientData, "series too short for the requested split");
  }

  DesignMatrix head;
  head.entries = design.entries.topRows(n_fit);
  head.time_grid.assign(design.time_grid.begin(),
                        design.time_grid.begin() + n_fit);
  head.spec = design.spec;
  const std::span<const double> y_fit = target.subspan(0, n_fit);
  const Eigen::Map<const Eigen::VectorXd> y_holdout(target.data() + n_fit,
                                                    n_holdout);
  const Eigen::MatrixXd tail = design.entries.bottomRows(n_holdout);

  CrossValidationResult result;
  double best_rmse = 0.0;
  bool first = true;
  for (double lambda : config.cv_grid) {
    FitConfig local = config;
    local.lambda = lambda;
    const SparseCoefficients fit = fit_l1(head, y_fit, local);
    const double rmse = std::sqrt(
        (tail * fit.xi - y_holdout).squaredNorm() / static_cast<double>(n_holdout));
    result.table.emplace_back(lambda, rmse);
    if (first || rmse < best_rmse ||
        (rmse == best_rmse && lambda > result.best_lambda)) {
      result.best_lambda = lambda;
      best_rmse = rmse;
      first = false;
    }
  }
  return result;
}

}  // namespace siabf
