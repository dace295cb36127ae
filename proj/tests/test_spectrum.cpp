#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "siabf/errors.hpp"
#include "siabf/spectrum.hpp"

using namespace siabf;

namespace {

TimeSeries make_series(std::vector<double> values, double d = 1.0) {
  return TimeSeries(std::move(values), 0.0, d);
}

SpectrumReport sorted_spectrum(const TimeSeries& series) {
  SpectrumReport report = dft_spectrum(series);
  sorting_diagram(report);
  return report;
}

// Report with hand-picked amplitudes, for the rank/index operations.
SpectrumReport synthetic_report(std::vector<double> amplitudes) {
  SpectrumReport report;
  report.frequencies.resize(amplitudes.size());
  for (std::size_t w = 0; w < amplitudes.size(); ++w) {
    report.frequencies[w] = static_cast<double>(w);
  }
  report.amplitudes = std::move(amplitudes);
  sorting_diagram(report);
  return report;
}

}  // namespace

TEST_CASE("dft_spectrum of a constant series is DC only") {
  const double c = -2.5;
  const std::size_t n = 16;
  const SpectrumReport report =
      dft_spectrum(make_series(std::vector<double>(n, c)));
  REQUIRE(report.amplitudes.size() == (n - 1) / 2 + 1);
  CHECK(report.amplitudes[0] ==
        doctest::Approx(n * std::abs(c)).epsilon(1e-12));
  for (std::size_t w = 1; w < report.amplitudes.size(); ++w) {
    CHECK(report.amplitudes[w] < 1e-9 * n * std::abs(c));
  }
  CHECK(report.frequencies[0] == 0.0);
}

TEST_CASE("dft_spectrum of zeros is all zero") {
  const SpectrumReport report =
      dft_spectrum(make_series(std::vector<double>(10, 0.0)));
  for (double a : report.amplitudes) CHECK(a == doctest::Approx(0.0));
}

TEST_CASE("dft_spectrum single tone matches the direct sum") {
  const std::size_t n = 8;
  std::vector<double> x(n);
  for (std::size_t s = 0; s < n; ++s) {
    x[s] = std::sin(2.0 * std::numbers::pi * static_cast<double>(s) / n);
  }
  const SpectrumReport report = dft_spectrum(make_series(x));
  CHECK(report.amplitudes[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(report.amplitudes[0] < 1e-9);
  CHECK(report.amplitudes[2] < 1e-9);
  CHECK(report.amplitudes[3] < 1e-9);
}

TEST_CASE("dft_spectrum matches the O(N^2) oracle on random series") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> value(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> length(2, 256);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> x(length(rng));
    for (auto& v : x) v = value(rng);
    const SpectrumReport report = dft_spectrum(make_series(x, 0.5));
    const auto expected = oracle::dft_amplitudes(x);
    REQUIRE(report.amplitudes.size() == expected.size());
    const double peak = *std::max_element(expected.begin(), expected.end());
    for (std::size_t w = 0; w < expected.size(); ++w) {
      CHECK(std::abs(report.amplitudes[w] - expected[w]) <= 1e-9 * peak);
      CHECK(report.frequencies[w] ==
            doctest::Approx(w / (x.size() * 0.5)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Parseval: full squared spectrum equals N times signal energy") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> x(33);
  for (auto& v : x) v = value(rng);
  double energy = 0.0;
  for (double v : x) energy += v * v;
  CHECK(oracle::dft_energy(x) ==
        doctest::Approx(x.size() * energy).epsilon(1e-9));
}

TEST_CASE("amplitudes are invariant under circular shift") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> x(50);
  for (auto& v : x) v = value(rng);
  const SpectrumReport base = dft_spectrum(make_series(x));
  std::rotate(x.begin(), x.begin() + 17, x.end());
  const SpectrumReport shifted = dft_spectrum(make_series(x));
  const double peak =
      *std::max_element(base.amplitudes.begin(), base.amplitudes.end());
  for (std::size_t w = 0; w < base.amplitudes.size(); ++w) {
    CHECK(std::abs(base.amplitudes[w] - shifted.amplitudes[w]) <= 1e-9 * peak);
  }
}

TEST_CASE("amplitudes scale linearly and the index is scale-invariant") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<double> x(64), scaled(64);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = value(rng);
    scaled[i] = 3.5 * x[i];
  }
  SpectrumReport a = sorted_spectrum(make_series(x));
  SpectrumReport b = sorted_spectrum(make_series(scaled));
  for (std::size_t w = 0; w < a.amplitudes.size(); ++w) {
    CHECK(b.amplitudes[w] ==
          doctest::Approx(3.5 * a.amplitudes[w]).epsilon(1e-9));
  }
  CHECK(quasi_periodic_index(a) ==
        doctest::Approx(quasi_periodic_index(b)).epsilon(1e-9));
  CHECK(adaptive_periods(a, 5).periods == adaptive_periods(b, 5).periods);
}

TEST_CASE("sorting_diagram orders by descending amplitude") {
  const SpectrumReport report = synthetic_report({0, 5, 3, 9});
  CHECK(report.sorted_ranks == std::vector<std::size_t>{3, 1, 2, 0});
}

TEST_CASE("sorting_diagram breaks ties by ascending bin") {
  const SpectrumReport report = synthetic_report({2, 2, 2});
  CHECK(report.sorted_ranks == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("adaptive_periods picks the reciprocal of the peak frequency") {
  std::vector<double> x(100);
  for (std::size_t s = 0; s < x.size(); ++s) {
    x[s] = std::sin(2.0 * std::numbers::pi * 4.0 * s / 100.0);
  }
  SpectrumReport report = sorted_spectrum(make_series(x));
  CHECK(report.sorted_ranks.front() == 4);
  const AdaptivePeriods periods = adaptive_periods(report, 1);
  REQUIRE(periods.periods.size() == 1);
  CHECK(periods.periods[0] == doctest::Approx(25.0).epsilon(1e-12));
}

TEST_CASE("adaptive_periods orders two tones by amplitude") {
  const std::size_t n = 64;
  std::vector<double> x(n);
  for (std::size_t s = 0; s < n; ++s) {
    x[s] = 5.0 * std::sin(2.0 * std::numbers::pi * 2.0 * s / n) +
           3.0 * std::sin(2.0 * std::numbers::pi * 7.0 * s / n);
  }
  // Oracle confirms which bin is stronger before we assert the order.
  const auto reference = oracle::dft_amplitudes(x);
  REQUIRE(reference[2] > reference[7]);

  SpectrumReport report = sorted_spectrum(make_series(x));
  const AdaptivePeriods periods = adaptive_periods(report, 2);
  REQUIRE(periods.periods.size() == 2);
  CHECK(periods.periods[0] == doctest::Approx(n / 2.0).epsilon(1e-12));
  CHECK(periods.periods[1] == doctest::Approx(n / 7.0).epsilon(1e-12));
  CHECK(periods.source_bins == std::vector<std::size_t>{2, 7});
}

TEST_CASE("adaptive_periods exhausts the non-DC bins when Q is large") {
  const SpectrumReport report = synthetic_report({9, 1, 4, 2});
  const AdaptivePeriods periods = adaptive_periods(report, 100);
  CHECK(periods.source_bins == std::vector<std::size_t>{2, 3, 1});
  CHECK(periods.source_amplitudes == std::vector<double>{4, 2, 1});
}

TEST_CASE("quasi_periodic_index extremes") {
  std::vector<double> dominant(20, 0.0);
  dominant[3] = 10.0;
  CHECK(quasi_periodic_index(synthetic_report(dominant)) ==
        doctest::Approx(1.0));

  CHECK(quasi_periodic_index(synthetic_report({5, 5, 5, 5})) == 0.0);

  CHECK_THROWS_AS(quasi_periodic_index(synthetic_report({0, 0, 0})), Error);
}

TEST_CASE("quasi_periodic_index sums all slopes when fewer than ten exist") {
  // Descending: 8,4,1 -> slopes 4,3; both are taken.
  CHECK(quasi_periodic_index(synthetic_report({4, 8, 1})) ==
        doctest::Approx((4.0 + 3.0) / 8.0));
}

TEST_CASE("white noise scores below the data-driven threshold") {
  std::mt19937 rng(424242);
  std::normal_distribution<double> value(0.0, 1.0);
  std::vector<double> x(1024);
  for (auto& v : x) v = value(rng);
  SpectrumReport report = sorted_spectrum(make_series(x));
  const double index = quasi_periodic_index(report);
  CHECK(index < 0.5);
  CHECK(classify_suitability(index) == Suitability::DataDrivenFavored);
}

TEST_CASE("classify_suitability thresholds") {
  CHECK(classify_suitability(0.830) == Suitability::ModelBasedFavored);
  CHECK(classify_suitability(0.8) == Suitability::ModelBasedFavored);
  CHECK(classify_suitability(0.5) == Suitability::DataDrivenFavored);
  CHECK(classify_suitability(0.65) == Suitability::Contested);
  CHECK_THROWS_AS(classify_suitability(-0.1), Error);
}
