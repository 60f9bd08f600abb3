#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "kgwave/errors.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/spectral.hpp"
#include "kgwave/waves.hpp"

namespace {

using namespace kgwave;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PeriodicWave zero_wave(double omega, double L, std::size_t N) {
  const std::vector<double> z(N, 0.0);
  return PeriodicWave(WaveParams{1, omega, 0.0, L, {}, speed_from_omega(omega)},
                      z, z);
}

// The c = 0 wave of period L0: omega = 1.
PeriodicWave standing_wave(int k, double L0, std::size_t N = 512) {
  return wave_from_energy(k, 1.0, energy_from_period(k, 1.0, L0), N);
}

int cyclic_sign_changes(const std::vector<double>& v) {
  int n = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] * v[(j + 1) % v.size()] < 0.0) ++n;
  }
  return n;
}

TEST(HillSpectrum, ZeroPotentialControl) {
  const double omega = 0.7;
  const double L = 5.0;
  const std::size_t N = 64;
  const SpectrumReport r = hill_spectrum(zero_wave(omega, L, N), N);
  std::vector<double> exact;
  for (int n = -static_cast<int>(N) / 2 + 1; n <= static_cast<int>(N) / 2; ++n) {
    const double q = kTwoPi * n / L;
    exact.push_back(omega * q * q - 1.0);
  }
  std::sort(exact.begin(), exact.end());
  ASSERT_EQ(r.eigenvalues.size(), exact.size());
  // The Nyquist mode is discretization-dependent; compare the resolved ones.
  for (std::size_t i = 0; i + 1 < exact.size(); ++i) {
    EXPECT_NEAR(r.eigenvalues[i], exact[i], 1e-10 * std::max(1.0, std::abs(exact[i])));
  }
}

TEST(HillSpectrum, Phi4InertialIndexAndGroundState) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5));
  for (std::size_t N : {128u, 256u, 512u}) {
    const SpectrumReport r = hill_spectrum(w, N);
    EXPECT_EQ(r.n_negative, 1) << N;
    EXPECT_EQ(r.n_zero, 1) << N;
    EXPECT_GE(r.zero_eigenvector_match, 1.0 - 1e-8);
  }
  const SpectrumReport r = hill_spectrum(w, 256);
  const std::vector<double>& g = r.eigenvectors[0];
  const double scale = *std::max_element(g.begin(), g.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  double min_abs = 1e300;
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_NEAR(g[j], g[(g.size() - j) % g.size()], 1e-8 * std::abs(scale));
    EXPECT_GT(g[j] * scale, 0.0);
    min_abs = std::min(min_abs, std::abs(g[j]));
  }
  EXPECT_GT(min_abs, 1e-8 * std::abs(scale));
}

TEST(HillSpectrum, SturmOscillationCount) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.7));
  const SpectrumReport r = hill_spectrum(w, 256);
  EXPECT_EQ(cyclic_sign_changes(r.eigenvectors[1]), 2);
  EXPECT_EQ(cyclic_sign_changes(r.eigenvectors[2]), 2);
}

TEST(HillSpectrum, ZeroModeResidual) {
  const PeriodicWave w = explicit_phi6(kTwoPi, Modulus(0.5), 256);
  const Eigen::MatrixXd M = hill_matrix(w, 256);
  const Eigen::Map<const Eigen::VectorXd> hp(w.hprime().data(), 256);
  EXPECT_LE((M * hp).norm() / hp.norm(), 1e-8);
}

TEST(KgSpectrum, Phi4IndexAndZeroMode) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5));
  const double c = *w.params().c;
  for (std::size_t N : {128u, 256u}) {
    const SpectrumReport r = kg_block_spectrum(w, c, N);
    EXPECT_EQ(r.n_negative, 1);
    EXPECT_EQ(r.n_zero, 1);
    EXPECT_GE(r.zero_eigenvector_match, 1.0 - 1e-8);
    // Min-max picture: 0 is the second eigenvalue, the third is positive.
    EXPECT_LT(r.eigenvalues[0], -r.tol_zero);
    EXPECT_LE(std::abs(r.eigenvalues[1]), r.tol_zero);
    EXPECT_GT(r.eigenvalues[2], 10.0 * r.tol_zero);
  }
}

TEST(KgSpectrum, ZeroModeResidual) {
  const std::size_t N = 256;
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.6), N);
  const double c = *w.params().c;
  const Eigen::MatrixXd M = kg_block_matrix(w, c, N);
  const std::vector<double> h2 = w.hsecond();
  Eigen::VectorXd z(2 * N);
  for (std::size_t j = 0; j < N; ++j) {
    z[j] = w.hprime()[j];
    z[N + j] = c * h2[j];
  }
  EXPECT_LE((M * z).norm() / z.norm(), 1e-7);
}

TEST(KgSpectrum, Phi6Index) {
  const PeriodicWave w = explicit_phi6(kTwoPi, Modulus(0.6));
  const SpectrumReport r = kg_block_spectrum(w, *w.params().c, 256);
  EXPECT_EQ(r.n_negative, 1);
  EXPECT_EQ(r.n_zero, 1);
}

TEST(KgSpectrum, DecouplesAtZeroSpeed) {
  const PeriodicWave w = standing_wave(1, 8.0, 128);
  const SpectrumReport kg = kg_block_spectrum(w, 0.0, 128);
  const SpectrumReport hill = hill_spectrum(w, 128);
  std::vector<double> merged = hill.eigenvalues;
  merged.insert(merged.end(), 128, 1.0);
  std::sort(merged.begin(), merged.end());
  ASSERT_EQ(kg.eigenvalues.size(), merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    EXPECT_NEAR(kg.eigenvalues[i], merged[i], 1e-9 * std::max(1.0, std::abs(merged[i])));
  }
}

TEST(KgSpectrum, QuadraticFormIdentity) {
  const std::size_t N = 128;
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5), N);
  const double c = *w.params().c;
  const Eigen::MatrixXd M = kg_block_matrix(w, c, N);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> u = random_odd_function(w, rng);
    std::vector<double> v = random_odd_function(w, rng);
    // An even part too, so the pair is generic.
    const std::vector<double> s = random_odd_function(w, rng);
    std::vector<double> uu(u);
    for (std::size_t j = 0; j < N; ++j) {
      uu[j] += s[(j + N / 4) % N];
      v[j] += 0.5 * s[(j + N / 8) % N];
    }
    Eigen::VectorXd z(2 * N);
    for (std::size_t j = 0; j < N; ++j) {
      z[j] = uu[j];
      z[N + j] = v[j];
    }
    const double matrix_form = w.dx() * z.dot(M * z);
    const double form = kg_quadratic_form(w, c, uu, v);
    EXPECT_NEAR(matrix_form, form, 1e-10 * std::abs(form));
  }
}

TEST(KgSpectrum, RejectsWrongSpeed) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5), 128);
  EXPECT_THROW(kg_block_spectrum(w, 0.3, 128), ParameterError);
  EXPECT_THROW(kg_block_odd(w, *w.params().c, 128), ParityError);
}

TEST(OddSpectrum, ZeroPotentialControl) {
  const double omega = 1.3;
  const double L = 7.0;
  const std::size_t N = 64;
  const SpectrumReport r = odd_spectrum(zero_wave(omega, L, N), N);
  ASSERT_EQ(r.eigenvalues.size(), N / 2 - 1);
  for (std::size_t n = 1; n <= r.eigenvalues.size(); ++n) {
    const double q = kTwoPi * static_cast<double>(n) / L;
    EXPECT_NEAR(r.eigenvalues[n - 1], omega * q * q - 1.0, 1e-10 * omega * q * q);
  }
}

TEST(OddSpectrum, StandingWaveIsPositive) {
  for (int k : {1, 2, 3}) {
    const PeriodicWave w = standing_wave(k, 8.0);
    const SpectrumReport r = odd_spectrum(w, 256);
    EXPECT_GT(r.eigenvalues.front(), 0.0);
    EXPECT_EQ(r.n_negative, 0);
    EXPECT_EQ(r.n_zero, 0);
    const SpectrumReport kg = kg_block_odd(w, 0.0, 256);
    EXPECT_EQ(kg.n_negative, 0);
    EXPECT_EQ(kg.n_zero, 0);
  }
}

TEST(Coercivity, RandomOddPairsRespectBound) {
  for (int k : {1, 2, 3}) {
    const PeriodicWave w = standing_wave(k, 8.0, 256);
    const CoercivityReport r = coercivity_constants(w, 0, 50, 256);
    EXPECT_GT(r.sigma, 0.0);
    EXPECT_EQ(r.samples, 50);
    EXPECT_EQ(r.violations, 0);
    EXPECT_GT(r.gamma_tilde, 0.0);
    EXPECT_LE(r.gamma_tilde, 1.0);
    EXPECT_GE(r.min_ratio, r.gamma_tilde);
    EXPECT_EQ(r.chain_feasible, 1.0 < r.sigma);
  }
}

TEST(Coercivity, FirstOddModeSanityBand) {
  const std::size_t N = 256;
  const PeriodicWave w = standing_wave(2, 8.0, N);
  const CoercivityReport c = coercivity_constants(w, 0, 10, N);
  const SpectrumReport r = odd_spectrum(w, N);
  // Sine coefficients in the orthonormal basis back to grid values.
  const std::vector<double>& a = r.eigenvectors[0];
  std::vector<double> u(N, 0.0);
  for (std::size_t n = 1; n <= a.size(); ++n) {
    for (std::size_t j = 0; j < N; ++j) {
      u[j] += a[n - 1] * std::sin(kTwoPi * n * w.x(j) / w.period());
    }
  }
  const std::vector<double> v(N, 0.0);
  const double ratio = kg_quadratic_form(w, 0.0, u, v) / x_norm_squared(w, u, v);
  EXPECT_GE(ratio, c.gamma_tilde);
  EXPECT_LE(ratio, c.sigma * (1.0 + 1e-9));
}

TEST(Resolution, UnresolvedWaveIsRejected) {
  const PeriodicWave steep = explicit_phi4(kTwoPi, Modulus(0.999), 512);
  EXPECT_THROW(hill_spectrum(steep, 32), ResolutionError);
  EXPECT_THROW(hill_spectrum(explicit_phi4(kTwoPi, Modulus(0.5), 512), 10),
               ParameterError);
}

TEST(Tolerances, ZeroToleranceAndLinearGap) {
  EXPECT_DOUBLE_EQ(zero_tolerance(1.0, kTwoPi), 1e-6);
  EXPECT_NEAR(linear_gap(1.0, kTwoPi), 0.0, 1e-15);
  EXPECT_NEAR(linear_gap(1.0, 8.0), 1.0 - std::pow(kTwoPi / 8.0, 2), 1e-15);
}

TEST(Spectrum, DispatcherMatchesDirectCalls) {
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5), 128);
  const SpectrumReport a = spectrum(OperatorKind::kHill, w, 0.0, 128);
  const SpectrumReport b = hill_spectrum(w, 128);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(to_string(OperatorKind::kKgBlock), "kg_block");
}

}  // namespace
