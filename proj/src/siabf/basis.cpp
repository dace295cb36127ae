#include "siabf/basis.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "siabf/errors.hpp"

namespace siabf {

namespace {

constexpr double kDuplicatePeriodRelTol = 1e-12;

std::string period_label(const char* kind, double period) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s(2*pi*t/%.12g)", kind, period);
  return buf;
}

}  // namespace

BasisSpec build_spec(std::span<const double> periods, bool include_intercept,
                     int trend_degree) {
  if (trend_degree != 0 && trend_degree != 1) {
    throw Error(Errc::InvalidArgument, "trend_degree must be 0 or 1");
  }
  BasisSpec spec;
  spec.include_intercept = include_intercept;
  spec.trend_degree = trend_degree;
  for (double period : periods) {
    if (!(std::isfinite(period) && period > 0.0)) {
      throw Error(Errc::InvalidArgument, "periods must be finite and positive");
    }
    bool duplicate = false;
    for (double seen : spec.fourier_periods) {
      if (std::abs(period - seen) <= kDuplicatePeriodRelTol * std::abs(seen)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) spec.fourier_periods.push_back(period);
  }
  for (double period : spec.fourier_periods) {
    spec.column_labels.push_back(period_label("sin", period));
    spec.column_labels.push_back(period_label("cos", period));
  }
  if (include_intercept) spec.column_labels.emplace_back("1");
  if (trend_degree == 1) spec.column_labels.emplace_back("t");
  if (spec.column_count() == 0) {
    throw Error(Errc::EmptySpec, "no periods, intercept, or trend requested");
  }
  return spec;
}

BasisSpec build_spec(const AdaptivePeriods& periods, bool include_intercept,
                     int trend_degree) {
  return build_spec(std::span<const double>(periods.periods), include_intercept,
                    trend_degree);
}

DesignMatrix evaluate(const BasisSpec& spec, std::span<const double> time_grid) {
  if (time_grid.empty()) {
    throw Error(Errc::InvalidArgument, "time grid is empty");
  }
  for (double t : time_grid) {
    if (!std::isfinite(t)) {
      throw Error(Errc::InvalidArgument, "time grid contains a non-finite value");
    }
  }
  if (spec.trend_degree == 1 && !spec.trend_window) {
    throw Error(Errc::InvalidArgument,
                "trend column requested but no training window set");
  }

  const auto n = static_cast<Eigen::Index>(time_grid.size());
  const auto p = static_cast<Eigen::Index>(spec.column_count());
  DesignMatrix design;
  design.entries.resize(n, p);
  design.time_grid.assign(time_grid.begin(), time_grid.end());
  design.spec = spec;

  Eigen::Index col = 0;
  for (double period : spec.fourier_periods) {
    const double omega = 2.0 * std::numbers::pi / period;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double phase = omega * time_grid[i];
      design.entries(i, col) = std::sin(phase);
      design.entries(i, col + 1) = std::cos(phase);
    }
    col += 2;
  }
  if (spec.include_intercept) {
    design.entries.col(col).setOnes();
    ++col;
  }
  if (spec.trend_degree == 1) {
    const auto [t0, t1] = *spec.trend_window;
    const double scale = t1 - t0;
    if (!(scale > 0.0)) {
      throw Error(Errc::InvalidArgument, "trend window must have positive width");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      design.entries(i, col) = (time_grid[i] - t0) / scale;
    }
    ++col;
  }
  return design;
}

}  // namespace siabf
