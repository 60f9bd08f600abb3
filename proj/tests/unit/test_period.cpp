#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "kgwave/errors.hpp"
#include "kgwave/floquet.hpp"
#include "kgwave/period.hpp"
#include "kgwave/waves.hpp"
#include "oracles.hpp"

namespace {

using namespace kgwave;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GridPoint {
  int k;
  double omega;
  double fraction;
};

std::vector<GridPoint> standard_grid() {
  std::vector<GridPoint> g;
  for (int k : {1, 2, 3, 5}) {
    for (double omega : {0.25, 1.0, 4.0}) {
      for (double f : {0.1, 0.5, 0.9}) g.push_back({k, omega, f});
    }
  }
  return g;
}

TEST(PeriodMap, QuadratureShootingAndOracleAgree) {
  for (const auto& p : standard_grid()) {
    const double B = p.fraction * energy_bound(p.k, p.omega);
    const double lq = period_quadrature(p.k, p.omega, B);
    const double ls = period_shooting(p.k, p.omega, B);
    const double lo = oracle::period(p.k, p.omega, B);
    EXPECT_LE(std::abs(lq - ls) / lq, 1e-8) << p.k << " " << p.omega;
    EXPECT_LE(std::abs(lq - lo) / lo, 1e-12) << p.k << " " << p.omega;
  }
}

TEST(PeriodMap, DerivativePositiveOnGrid) {
  for (const auto& p : standard_grid()) {
    const double B = p.fraction * energy_bound(p.k, p.omega);
    const PeriodDerivative d = dL_dB(p.k, p.omega, B);
    EXPECT_GT(d.value, 0.0);
    EXPECT_TRUE(d.positive);
    EXPECT_TRUE(d.richardson_ok);
    // Independent difference quotient of the oracle period.
    const double h = 1e-4 * std::min(B, energy_bound(p.k, p.omega) - B);
    const double fd = (oracle::period(p.k, p.omega, B + h) -
                       oracle::period(p.k, p.omega, B - h)) / (2 * h);
    EXPECT_NEAR(d.value, fd, 1e-5 * std::abs(fd));
  }
}

TEST(PeriodMap, CenterLimit) {
  for (int k : {1, 2, 5}) {
    for (double omega : {0.25, 1.0, 4.0}) {
      const double B = 1e-6 * energy_bound(k, omega);
      const double ratio =
          period_quadrature(k, omega, B) / (kTwoPi * std::sqrt(omega));
      EXPECT_NEAR(ratio, 1.0, 1e-4);
      // The correction is O(B^k), below round-off for k > 1.
      if (k == 1) {
        EXPECT_GT(ratio, 1.0);
      }
      EXPECT_GE(ratio, 1.0 - 1e-14);
    }
  }
}

TEST(PeriodMap, ClosedFormWaveHasItsPeriod) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5));
  EXPECT_NEAR(period_quadrature(1, w.params().omega, w.params().B), kTwoPi,
              1e-8);
}

TEST(PeriodMap, RejectsLevelsOutsideRange) {
  EXPECT_THROW(period_quadrature(1, 1.0, -0.1), EnergyLevelError);
  EXPECT_THROW(dL_dB(1, 1.0, 0.3), EnergyLevelError);
}

TEST(PeriodDerivativeExamples, MatchesMinusTheta) {
  const PeriodDerivative d = dL_dB(1, 1.0, 0.1);
  EXPECT_GT(d.value, 0.0);
  const double th = theta(wave_from_energy(1, 1.0, 0.1)).theta;
  EXPECT_LE(std::abs(d.value + th), 1e-5 * std::abs(th));
}

TEST(PeriodDerivativeExamples, PositiveAcrossExponents) {
  EXPECT_GT(dL_dB(2, 0.5, 0.5 * energy_bound(2, 0.5)).value, 0.0);
  EXPECT_GT(dL_dB(5, 2.0, 0.9 * energy_bound(5, 2.0)).value, 0.0);
}

TEST(Monotonicity, ValuesAtOrigin) {
  EXPECT_EQ(monotonicity_function(1, 0.0), 0.0);
  EXPECT_NEAR(monotonicity_derivative(1, 0.0), 1.5, 1e-15);
  const double h = 1e-5;
  const double fd =
      (monotonicity_function(1, h) - monotonicity_function(1, -h)) / (2 * h);
  EXPECT_NEAR(fd, 1.5, 1e-8);
}

TEST(Monotonicity, DerivativeMatchesFiniteDifference) {
  const double h = 1e-5;
  const double fd =
      (monotonicity_function(2, 0.5 + h) - monotonicity_function(2, 0.5 - h)) /
      (2 * h);
  const double exact = monotonicity_derivative(2, 0.5);
  EXPECT_GT(exact, 0.0);
  EXPECT_NEAR(exact, fd, 1e-6 * std::abs(exact));
}

TEST(Monotonicity, CertificateOnFineGrid) {
  std::vector<double> grid;
  for (int i = -999; i <= 999; ++i) grid.push_back(1e-3 * i);
  for (int k = 1; k <= 6; ++k) {
    const auto rows = monotonicity_certificate(k, grid);
    ASSERT_EQ(rows.size(), grid.size());
    for (const auto& r : rows) {
      if (r.h != 0.0) {
        ASSERT_GT(r.dI, 0.0) << "k=" << k << " h=" << r.h;
      }
      ASSERT_TRUE(r.positive) << "k=" << k << " h=" << r.h;
      ASSERT_TRUE(r.fd_agrees) << "k=" << k << " h=" << r.h;
    }
  }
}

TEST(Monotonicity, RejectsClosedInterval) {
  const std::vector<double> bad{0.5, 1.0};
  EXPECT_THROW(monotonicity_certificate(1, bad), DomainError);
  EXPECT_THROW(monotonicity_function(1, -1.0), DomainError);
}

TEST(PeriodMapSample, BundlesAllQuantities) {
  const PeriodMapSample s = sample_period_map(3, 0.25, 0.02);
  EXPECT_EQ(s.k, 3);
  EXPECT_DOUBLE_EQ(s.L_quadrature, period_quadrature(3, 0.25, 0.02));
  EXPECT_NEAR(s.L_shooting, s.L_quadrature, 1e-8 * s.L_quadrature);
  EXPECT_GT(s.L_B.value, 0.0);
}

}  // namespace
