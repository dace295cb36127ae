#include "siabf/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>

#include "siabf/errors.hpp"

namespace siabf {

namespace {

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

SpectrumReport dft_spectrum(const TimeSeries& series) {
  if (series.has_gaps()) {
    throw Error(Errc::InvalidArgument, "dft_spectrum requires a gap-free series");
  }
  const std::size_t n = series.size();
  if (n < 2) throw Error(Errc::TooShort, "dft_spectrum needs at least 2 samples");

  const std::size_t half = (n - 1) / 2;  // Nyquist bin (even n) excluded

  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  std::copy(series.values().begin(), series.values().end(), in);
  fftw_execute(plan);

  SpectrumReport report;
  report.amplitudes.resize(half + 1);
  report.frequencies.resize(half + 1);
  const double span = static_cast<double>(n) * series.sample_interval();
  for (std::size_t w = 0; w <= half; ++w) {
    report.amplitudes[w] = std::hypot(out[w][0], out[w][1]);
    report.frequencies[w] = static_cast<double>(w) / span;
  }

  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return report;
}

void sorting_diagram(SpectrumReport& report) {
  report.sorted_ranks.resize(report.amplitudes.size());
  std::iota(report.sorted_ranks.begin(), report.sorted_ranks.end(), 0u);
  std::stable_sort(report.sorted_ranks.begin(), report.sorted_ranks.end(),
                   [&](std::size_t a, std::size_t b) {
                     return report.amplitudes[a] > report.amplitudes[b];
                   });
}

AdaptivePeriods adaptive_periods(const SpectrumReport& report, int top_count) {
  if (report.sorted_ranks.size() != report.amplitudes.size()) {
    throw Error(Errc::InvalidArgument, "sorted_ranks not filled; run sorting_diagram");
  }
  if (top_count < 1) {
    throw Error(Errc::InvalidArgument, "top_count must be at least 1");
  }
  AdaptivePeriods result;
  for (std::size_t bin : report.sorted_ranks) {
    if (bin == 0) continue;  // DC maps to the intercept, not a finite period
    result.periods.push_back(1.0 / report.frequencies[bin]);
    result.source_amplitudes.push_back(report.amplitudes[bin]);
    result.source_bins.push_back(bin);
    if (result.periods.size() == static_cast<std::size_t>(top_count)) break;
  }
  return result;
}

double quasi_periodic_index(const SpectrumReport& report) {
  if (report.sorted_ranks.size() != report.amplitudes.size()) {
    throw Error(Errc::InvalidArgument, "sorted_ranks not filled; run sorting_diagram");
  }
  if (report.amplitudes.size() < 2) {
    throw Error(Errc::TooShort, "need at least 2 bins for the index");
  }
  const double peak = report.amplitudes[report.sorted_ranks.front()];
  if (peak == 0.0) {
    throw Error(Errc::DegenerateSpectrum, "maximum amplitude is zero");
  }
  std::vector<double> slopes(report.sorted_ranks.size() - 1);
  for (std::size_t i = 0; i + 1 < report.sorted_ranks.size(); ++i) {
    slopes[i] = report.amplitudes[report.sorted_ranks[i]] -
                report.amplitudes[report.sorted_ranks[i + 1]];
  }
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  const std::size_t take = std::min<std::size_t>(10, slopes.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) sum += slopes[i];
  return sum / peak;
}

Suitability classify_suitability(double index) {
  if (!(std::isfinite(index) && index >= 0.0)) {
    throw Error(Errc::InvalidArgument, "index must be finite and nonnegative");
  }
  if (index >= 0.8) return Suitability::ModelBasedFavored;
  if (index <= 0.5) return Suitability::DataDrivenFavored;
  return Suitability::Contested;
}

const char* suitability_name(Suitability s) {
  switch (s) {
    case Suitability::ModelBasedFavored: return "model_based_favored";
    case Suitability::Contested: return "contested";
    case Suitability::DataDrivenFavored: return "data_driven_favored";
  }
  return "unknown";
}

}  // namespace siabf
