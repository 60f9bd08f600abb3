#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "kgwave/floquet.hpp"
#include "kgwave/period.hpp"
#include "kgwave/planar.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/waves.hpp"
#include "oracles.hpp"

namespace {

using namespace kgwave;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(SolveYbar, ConstantCoefficientControl) {
  // With the potential removed, -omega y'' - y = 0 gives
  // ybar = sqrt(omega) sin(x / sqrt(omega)) / h'(0).
  const double omega = 0.8;
  const PeriodicWave w = wave_from_energy(1, omega, 0.2);
  const YbarSamples s = solve_ybar(w, {}, 0.0);
  const double hp0 = w.hprime()[0];
  ASSERT_EQ(s.x.size(), w.size() + 1);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double exact = std::sqrt(omega) * std::sin(s.x[i] / std::sqrt(omega)) / hp0;
    EXPECT_NEAR(s.y[i], exact, 1e-10);
    EXPECT_NEAR(s.yp[i], std::cos(s.x[i] / std::sqrt(omega)) / hp0, 1e-10);
  }
}

TEST(SolveYbar, MatchesOdeOracle) {
  const PeriodicWave w = wave_from_energy(2, 0.6, 0.7 * energy_bound(2, 0.6));
  const std::vector<double> xs{0.3, 1.7, 4.1, w.period()};
  const YbarSamples s = solve_ybar(w, xs);
  const double hp0 = std::sqrt(2.0 * w.params().B);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto ref = oracle::variational(2, 0.6, w.params().B, 0.0, 1.0 / hp0, xs[i]);
    EXPECT_NEAR(s.y[i], ref[2], 1e-9 * std::max(1.0, std::abs(ref[2])));
    EXPECT_NEAR(s.h[i], ref[0], 1e-10);
  }
}

TEST(SolveYbar, IsTheEnergyDerivativeOfTheOrbit) {
  const int k = 1;
  const double omega = 1.0;
  const double B = 0.15;
  const PeriodicWave w = wave_from_energy(k, omega, B, 256);
  const std::vector<double> x = w.grid();
  const YbarSamples s = solve_ybar(w, x);
  const double d = 1e-5 * B;
  std::vector<double> hp(x.size()), hm(x.size()), xi(x.size());
  planar::sample_orbit(k, omega, B + d, x, hp, xi);
  planar::sample_orbit(k, omega, B - d, x, hm, xi);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR((hp[i] - hm[i]) / (2 * d), s.y[i], 1e-5 * std::max(1.0, std::abs(s.y[i])));
  }
}

TEST(SolveYbar, LinearInInitialSlope) {
  const double B = 0.1;
  const double L = period_quadrature(1, 1.0, B);
  const std::vector<double> x{L};
  const auto one = planar::sample_variational(1, 1.0, B, 0.0, 1.0, x);
  const auto two = planar::sample_variational(1, 1.0, B, 0.0, 2.0, x);
  EXPECT_NEAR(two.y[0], 2.0 * one.y[0], 1e-12 * std::abs(one.y[0]) + 1e-14);
}

TEST(Theta, ExplicitWaveHasNegativeTheta) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5));
  const ThetaResult r = theta(w);
  EXPECT_LT(r.ybar_at_L, 0.0);
  EXPECT_LT(r.theta, 0.0);
  EXPECT_NEAR(r.theta, r.ybar_at_L / r.hprime_at_0, 1e-15);
  EXPECT_LE(r.wronskian_drift, 1e-8);
  EXPECT_LE(r.relation_defect, 1e-7);
}

TEST(Theta, PeriodDerivativeIdentityAndIsoinertialSweep) {
  for (int k : {1, 2, 3}) {
    for (double omega : {0.25, 1.0, 4.0}) {
      for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double B = f * energy_bound(k, omega);
        const PeriodicWave w = wave_from_energy(k, omega, B);
        const ThetaResult r = theta(w);
        const double lb = dL_dB(k, omega, B).value;
        EXPECT_LT(r.theta, 0.0);
        EXPECT_LE(std::abs(lb + r.theta), 1e-5 * std::abs(r.theta));
        EXPECT_NEAR(r.theta, oracle::theta(k, omega, B), 1e-6 * std::abs(r.theta));
        EXPECT_LE(r.wronskian_drift, 1e-8);
        EXPECT_LE(r.relation_defect, 1e-7);
        EXPECT_EQ(kernel_dimension_criterion(r), KernelDimension::kSimple);
        if (linear_gap(omega, w.period()) < 1e-4) continue;
        const SpectrumReport s = hill_spectrum(w, 256);
        EXPECT_EQ(s.n_negative, 1) << k << " " << omega << " " << f;
        EXPECT_EQ(s.n_zero, 1) << k << " " << omega << " " << f;
      }
    }
  }
}

TEST(Theta, NearCenterLimit) {
  const double B = 1e-4 * energy_bound(1, 1.0);
  const ThetaResult r = theta(wave_from_energy(1, 1.0, B));
  const double lb = dL_dB(1, 1.0, B).value;
  EXPECT_LT(r.theta, 0.0);
  EXPECT_LE(std::abs(lb + r.theta), 1e-5 * std::abs(r.theta));
}

TEST(KernelDimension, Thresholds) {
  ThetaResult r;
  r.period = 2.0;
  r.theta = -1.0;
  EXPECT_EQ(kernel_dimension_criterion(r), KernelDimension::kSimple);
  r.theta = 0.0;
  EXPECT_EQ(kernel_dimension_criterion(r), KernelDimension::kDouble);
  r.theta = -kKernelThetaScale * r.period;
  EXPECT_EQ(kernel_dimension_criterion(r), KernelDimension::kDouble);
  r.theta = -1.0001 * kKernelThetaScale * r.period;
  EXPECT_EQ(kernel_dimension_criterion(r), KernelDimension::kSimple);
}

}  // namespace
