#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace siabf {

/// Affine rescaling applied before fitting; kept with the model so
/// predictions can be mapped back to signal units.
struct StandardizationStats {
  double mean = 0.0;
  double std = 1.0;
};

/// Uniformly sampled scalar series. Missing samples are carried as gaps
/// (NaN value + gap flag) so the original row positions stay addressable.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> values, double start_time,
             double sample_interval, std::vector<bool> gap_mask = {});

  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& gap_mask() const { return gap_mask_; }
  double start_time() const { return start_time_; }
  double sample_interval() const { return sample_interval_; }
  std::size_t size() const { return values_.size(); }
  double time_at(std::size_t index) const {
    return start_time_ + static_cast<double>(index) * sample_interval_;
  }
  double end_time() const { return time_at(values_.size() - 1); }
  bool has_gaps() const;
  std::vector<double> time_grid() const;

 private:
  std::vector<double> values_;
  std::vector<bool> gap_mask_;
  double start_time_;
  double sample_interval_;
};

TimeSeries ingest_csv(const std::string& path, const std::string& time_column,
                      const std::string& value_column);

/// Writes a series back to CSV; gap rows are omitted, mirroring ingestion.
void write_csv(const std::string& path, const TimeSeries& series,
               const std::string& time_column, const std::string& value_column);

TimeSeries interpolate_gaps(const TimeSeries& series);

std::pair<TimeSeries, StandardizationStats> standardize(
    const TimeSeries& series);

std::vector<double> destandardize(std::span<const double> values,
                                  const StandardizationStats& stats);

}  // namespace siabf
