#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "siabf/spectrum.hpp"

namespace siabf {

/// Dictionary layout: one sin/cos pair per period (in period-rank order),
/// then the intercept, then the normalized trend column.
struct BasisSpec {
  std::vector<double> fourier_periods;
  bool include_intercept = true;
  int trend_degree = 0;  // 0 or 1
  // Training window used to rescale the trend column to [0, 1]; must be
  // set before evaluating a spec with trend_degree == 1.
  std::optional<std::pair<double, double>> trend_window;
  std::vector<std::string> column_labels;

  std::size_t column_count() const {
    return 2 * fourier_periods.size() + (include_intercept ? 1 : 0) +
           static_cast<std::size_t>(trend_degree);
  }
};

struct DesignMatrix {
  Eigen::MatrixXd entries;
  std::vector<double> time_grid;
  BasisSpec spec;
};

BasisSpec build_spec(const AdaptivePeriods& periods, bool include_intercept,
                     int trend_degree);

BasisSpec build_spec(std::span<const double> periods, bool include_intercept,
                     int trend_degree);

DesignMatrix evaluate(const BasisSpec& spec, std::span<const double> time_grid);

}  // namespace siabf
