#pragma once

#include <string>

#include "siabf/forecast.hpp"
#include "siabf/robustness.hpp"
#include "siabf/spectrum.hpp"
#include "siabf/timeseries.hpp"

namespace siabf {

/// Steps I-II in one pass: spectrum, sorting diagram, adaptive periods,
/// quasi-periodic index.
struct Analysis {
  SpectrumReport report;
  AdaptivePeriods periods;
  Suitability suitability = Suitability::Contested;
};

Analysis analyze(const TimeSeries& series, int top_period_count);

std::string analysis_to_json(const Analysis& analysis);
std::string sorting_diagram_csv(const Analysis& analysis);
std::string period_table_csv(const Analysis& analysis);

std::string metrics_to_json(const EvaluationReport& report);
std::string robustness_to_json(const RobustnessReport& report);
std::string robustness_traces_csv(const RobustnessReport& report);

std::string cv_table_csv(const CrossValidationResult& cv);

}  // namespace siabf
