#pragma once

#include <cstddef>
#include <vector>

#include "siabf/timeseries.hpp"

namespace siabf {

/// Half-spectrum of the training series: amplitude modulus and physical
/// frequency per bin, plus the descending-amplitude rank order.
struct SpectrumReport {
  std::vector<double> amplitudes;       // |DFT|, bins 0..floor((N-1)/2)
  std::vector<double> frequencies;      // cycles per time unit, w/(N*d)
  std::vector<std::size_t> sorted_ranks;  // bin indices, amplitude descending
  double quasi_periodic_index = -1.0;   // negative until computed
};

/// Candidate periods from the strongest non-DC bins, strongest first.
struct AdaptivePeriods {
  std::vector<double> periods;
  std::vector<double> source_amplitudes;
  std::vector<std::size_t> source_bins;
};

enum class Suitability {
  ModelBasedFavored,
  Contested,
  DataDrivenFavored,
};

SpectrumReport dft_spectrum(const TimeSeries& series);

/// Fills sorted_ranks: descending amplitude, ties broken by ascending bin.
void sorting_diagram(SpectrumReport& report);

AdaptivePeriods adaptive_periods(const SpectrumReport& report, int top_count);

/// Sum of the ten largest consecutive declines in the sorting diagram,
/// divided by the maximum amplitude.
double quasi_periodic_index(const SpectrumReport& report);

Suitability classify_suitability(double index);

const char* suitability_name(Suitability s);

}  // namespace siabf
