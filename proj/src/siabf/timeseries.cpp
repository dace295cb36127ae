#include "siabf/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "siabf/errors.hpp"

namespace siabf {

namespace {

constexpr double kUniformityRelTol = 1e-6;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& raw, std::size_t line_no) {
  const std::string text = strip(raw);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::MalformedFile, "line " + std::to_string(line_no) +
                                         ": cannot parse number '" + text + "'");
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, double start_time,
                       double sample_interval, std::vector<bool> gap_mask)
    : values_(std::move(values)),
      gap_mask_(std::move(gap_mask)),
      start_time_(start_time),
      sample_interval_(sample_interval) {
  if (!(sample_interval_ > 0.0)) {
    throw Error(Errc::InvalidArgument, "sample interval must be positive");
  }
  if (values_.size() < 2) {
    throw Error(Errc::TooShort, "a series needs at least 2 samples");
  }
  if (gap_mask_.empty()) {
    gap_mask_.assign(values_.size(), false);
  } else if (gap_mask_.size() != values_.size()) {
    throw Error(Errc::DimensionMismatch, "gap mask length does not match values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!gap_mask_[i] && !std::isfinite(values_[i])) {
      throw Error(Errc::InvalidArgument,
                  "non-gap sample " + std::to_string(i) + " is not finite");
    }
  }
}

bool TimeSeries::has_gaps() const {
  return std::find(gap_mask_.begin(), gap_mask_.end(), true) != gap_mask_.end();
}

std::vector<double> TimeSeries::time_grid() const {
  std::vector<double> grid(values_.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = time_at(i);
  return grid;
}

TimeSeries ingest_csv(const std::string& path, const std::string& time_column,
                      const std::string& value_column) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::MalformedFile, "'" + path + "': missing header row");
  }
  const auto header = split_csv_line(line);
  std::size_t time_idx = header.size(), value_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = strip(header[i]);
    if (name == time_column) time_idx = i;
    if (name == value_column) value_idx = i;
  }
  if (time_idx == header.size()) {
    throw Error(Errc::MalformedFile,
                "'" + path + "': no column named '" + time_column + "'");
  }
  if (value_idx == header.size()) {
    throw Error(Errc::MalformedFile,
                "'" + path + "': no column named '" + value_column + "'");
  }

  std::vector<double> times, raw_values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(Errc::MalformedFile,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    times.push_back(parse_number(fields[time_idx], line_no));
    raw_values.push_back(parse_number(fields[value_idx], line_no));
  }

  if (times.size() < 2) {
    throw Error(Errc::TooShort, "'" + path + "': fewer than 2 data rows");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(Errc::MalformedFile,
                  "timestamps must be strictly increasing (row " +
                      std::to_string(i + 1) + ")");
    }
  }

  // Lower median of consecutive differences; robust against missing rows
  // as long as fewer than half of the steps are gaps.
  std::vector<double> diffs(times.size() - 1);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) diffs[i] = times[i + 1] - times[i];
  std::vector<double> sorted = diffs;
  std::sort(sorted.begin(), sorted.end());
  const double d = sorted[(sorted.size() - 1) / 2];

  const double start = times.front();
  std::vector<double> values;
  std::vector<bool> gaps;
  std::size_t prev_slot = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double offset = (times[i] - start) / d;
    const auto slot = static_cast<std::size_t>(std::llround(offset));
    const double expected = start + static_cast<double>(slot) * d;
    const double tol = kUniformityRelTol * std::max(d, times[i] - start);
    if (std::abs(times[i] - expected) > tol) {
      throw Error(Errc::NonUniformSampling,
                  "timestamp " + std::to_string(times[i]) +
                      " is off the uniform grid (interval " + std::to_string(d) +
                      ")");
    }
    if (i > 0 && slot <= prev_slot) {
      throw Error(Errc::NonUniformSampling,
                  "timestamps closer than half the sampling interval");
    }
    while (i > 0 && values.size() < slot) {
      values.push_back(std::numeric_limits<double>::quiet_NaN());
      gaps.push_back(true);
    }
    values.push_back(raw_values[i]);
    gaps.push_back(false);
    prev_slot = slot;
  }

  return TimeSeries(std::move(values), start, d, std::move(gaps));
}

void write_csv(const std::string& path, const TimeSeries& series,
               const std::string& time_column, const std::string& value_column) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << time_column << ',' << value_column << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.gap_mask()[i]) continue;
    out << format_number(series.time_at(i)) << ','
        << format_number(series.values()[i]) << '\n';
  }
}

TimeSeries interpolate_gaps(const TimeSeries& series) {
  const auto& mask = series.gap_mask();
  if (mask.front() || mask.back()) {
    throw Error(Errc::BoundaryGap, "cannot interpolate a gap at the series edge");
  }
  if (!series.has_gaps()) return series;

  std::vector<double> values = series.values();
  std::size_t left = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (mask[i]) continue;
    if (i > left + 1) {
      const double v0 = values[left], v1 = values[i];
      const double span = static_cast<double>(i - left);
      for (std::size_t k = left + 1; k < i; ++k) {
        values[k] = v0 + (v1 - v0) * static_cast<double>(k - left) / span;
      }
    }
    left = i;
  }
  return TimeSeries(std::move(values), series.start_time(),
                    series.sample_interval());
}

std::pair<TimeSeries, StandardizationStats> standardize(
    const TimeSeries& series) {
  if (series.has_gaps()) {
    throw Error(Errc::InvalidArgument, "standardize requires a gap-free series");
  }
  const auto& x = series.values();
  const auto n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= n;  // population variance
  const double std_dev = std::sqrt(var);
  if (std_dev == 0.0) {
    throw Error(Errc::ZeroVariance, "series is constant; cannot standardize");
  }
  std::vector<double> scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = (x[i] - mean) / std_dev;
  return {TimeSeries(std::move(scaled), series.start_time(),
                     series.sample_interval()),
          StandardizationStats{mean, std_dev}};
}

std::vector<double> destandardize(std::span<const double> values,
                                  const StandardizationStats& stats) {
  if (!(stats.std > 0.0)) {
    throw Error(Errc::ZeroVariance, "destandardize requires std > 0");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] * stats.std + stats.mean;
  }
  return out;
}

}  // namespace siabf
