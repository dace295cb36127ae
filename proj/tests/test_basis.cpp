#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "siabf/basis.hpp"
#include "siabf/errors.hpp"

using namespace siabf;

TEST_CASE("build_spec column counts and labels") {
  const std::vector<double> one_period{25.0};
  BasisSpec spec = build_spec(one_period, true, 1);
  CHECK(spec.column_count() == 4);
  REQUIRE(spec.column_labels.size() == 4);
  CHECK(spec.column_labels[0] == "sin(2*pi*t/25)");
  CHECK(spec.column_labels[1] == "cos(2*pi*t/25)");
  CHECK(spec.column_labels[2] == "1");
  CHECK(spec.column_labels[3] == "t");

  const std::vector<double> three{365.0, 1460.0, 2920.0};
  CHECK(build_spec(three, true, 0).column_count() == 7);
}

TEST_CASE("build_spec rejects an empty dictionary") {
  CHECK_THROWS_AS(build_spec(std::vector<double>{}, false, 0), Error);
  try {
    build_spec(std::vector<double>{}, false, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptySpec);
  }
}

TEST_CASE("build_spec validates its arguments") {
  CHECK_THROWS_AS(build_spec(std::vector<double>{25.0}, true, 2), Error);
  CHECK_THROWS_AS(build_spec(std::vector<double>{-1.0}, true, 0), Error);
  CHECK_THROWS_AS(build_spec(std::vector<double>{0.0}, true, 0), Error);
}

TEST_CASE("build_spec collapses duplicate periods") {
  const std::vector<double> periods{5.0, 5.0 * (1.0 + 1e-13), 7.0};
  const BasisSpec spec = build_spec(periods, false, 0);
  CHECK(spec.fourier_periods == std::vector<double>{5.0, 7.0});
  CHECK(spec.column_count() == 4);
}

TEST_CASE("evaluate intercept-only spec gives a column of ones") {
  const BasisSpec spec = build_spec(std::vector<double>{}, true, 0);
  const std::vector<double> grid{0.0, 7.0, 42.0};
  const DesignMatrix design = evaluate(spec, grid);
  REQUIRE(design.entries.rows() == 3);
  REQUIRE(design.entries.cols() == 1);
  for (int i = 0; i < 3; ++i) CHECK(design.entries(i, 0) == 1.0);
}

TEST_CASE("evaluate quarter-period values of a T=4 pair") {
  const BasisSpec spec = build_spec(std::vector<double>{4.0}, false, 0);
  const std::vector<double> grid{0.0, 1.0, 2.0};
  const DesignMatrix design = evaluate(spec, grid);
  CHECK(std::abs(design.entries(0, 0) - 0.0) <= 1e-12);
  CHECK(std::abs(design.entries(1, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(design.entries(2, 0) - 0.0) <= 1e-12);
  CHECK(std::abs(design.entries(0, 1) - 1.0) <= 1e-12);
  CHECK(std::abs(design.entries(1, 1) - 0.0) <= 1e-12);
  CHECK(std::abs(design.entries(2, 1) + 1.0) <= 1e-12);
}

TEST_CASE("evaluate matches direct per-entry evaluation") {
  BasisSpec spec = build_spec(std::vector<double>{25.0}, true, 1);
  spec.trend_window = std::pair{0.0, 99.0};
  std::vector<double> grid(100);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i);
  const DesignMatrix design = evaluate(spec, grid);
  REQUIRE(design.entries.cols() == 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const auto row = static_cast<Eigen::Index>(i);
    CHECK(design.entries(row, 0) ==
          doctest::Approx(std::sin(2.0 * std::numbers::pi * t / 25.0))
              .epsilon(1e-12));
    CHECK(design.entries(row, 1) ==
          doctest::Approx(std::cos(2.0 * std::numbers::pi * t / 25.0))
              .epsilon(1e-12));
    CHECK(design.entries(row, 2) == 1.0);
    CHECK(design.entries(row, 3) == doctest::Approx(t / 99.0).epsilon(1e-12));
  }
}

TEST_CASE("Fourier columns are periodic within 1e-9") {
  const std::vector<double> periods{3.7, 11.0};
  const BasisSpec spec = build_spec(periods, false, 0);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> time(-50.0, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = time(rng);
    for (std::size_t q = 0; q < periods.size(); ++q) {
      const std::vector<double> grid{t, t + periods[q]};
      const DesignMatrix design = evaluate(spec, grid);
      const auto col = static_cast<Eigen::Index>(2 * q);
      CHECK(std::abs(design.entries(0, col) - design.entries(1, col)) <= 1e-9);
      CHECK(std::abs(design.entries(0, col + 1) - design.entries(1, col + 1)) <=
            1e-9);
    }
  }
}

TEST_CASE("evaluate is deterministic and bounded") {
  BasisSpec spec = build_spec(std::vector<double>{2.5, 9.25}, true, 1);
  spec.trend_window = std::pair{0.0, 10.0};
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> time(-20.0, 20.0);
  std::vector<double> grid(64);
  for (auto& t : grid) t = time(rng);
  const DesignMatrix a = evaluate(spec, grid);
  const DesignMatrix b = evaluate(spec, grid);
  CHECK(a.entries == b.entries);  // bit-identical
  for (Eigen::Index i = 0; i < a.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {  // the Fourier columns
      CHECK(a.entries(i, j) >= -1.0);
      CHECK(a.entries(i, j) <= 1.0);
    }
    CHECK(std::isfinite(a.entries(i, 5)));
  }
}

TEST_CASE("evaluate error paths") {
  const BasisSpec spec = build_spec(std::vector<double>{4.0}, true, 0);
  CHECK_THROWS_AS(evaluate(spec, std::vector<double>{}), Error);
  CHECK_THROWS_AS(evaluate(spec, std::vector<double>{0.0, NAN}), Error);

  BasisSpec trended = build_spec(std::vector<double>{4.0}, true, 1);
  CHECK_THROWS_AS(evaluate(trended, std::vector<double>{0.0, 1.0}), Error);
  trended.trend_window = std::pair{5.0, 5.0};
  CHECK_THROWS_AS(evaluate(trended, std::vector<double>{0.0, 1.0}), Error);
}
