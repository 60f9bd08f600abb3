#include "kgwave/waves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "kgwave/errors.hpp"
#include "kgwave/period.hpp"
#include "kgwave/planar.hpp"
#include "kgwave/spectral.hpp"

namespace kgwave {
namespace {

using planar::ipow;

// Closed-form waves must zero the ODE to this level or the amplitude is
// replaced by the coefficient-matched one.
constexpr double kExplicitResidualGate = 1e-6;

void check_k_omega(int k, double omega) {
  if (k < 1) throw ParameterError("nonlinearity exponent k must be >= 1");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ParameterError("omega must be positive and finite");
  }
}

void check_explicit_inputs(double L0, Modulus kappa, std::size_t N) {
  if (!(L0 > 0.0) || !std::isfinite(L0)) {
    throw ParameterError("period L0 must be positive");
  }
  if (kappa.value() == 0.0) {
    throw ParameterError("modulus kappa = 0 gives the zero wave");
  }
  if (N < 16 || N % 2 != 0) {
    throw ParameterError("grid size must be even and >= 16");
  }
}

double explicit_speed(double omega, const char* model) {
  if (!(omega < 1.0)) {
    throw ParameterError(std::string(model) +
                         ": omega = " + std::to_string(omega) +
                         " >= 1, no real wave speed for this (L0, kappa)");
  }
  return std::sqrt(1.0 - omega);
}

}  // namespace

double energy_bound(int k, double omega) {
  check_k_omega(k, omega);
  return static_cast<double>(k) / (2.0 * omega * (k + 1));
}

std::optional<double> speed_from_omega(double omega) {
  if (omega > 1.0) return std::nullopt;
  return std::sqrt(1.0 - omega);
}

void check_energy_level(int k, double omega, double B) {
  const double bound = energy_bound(k, omega);
  if (!(B > 0.0 && B < bound)) {
    throw EnergyLevelError("energy level B = " + std::to_string(B) +
                           " outside (0, B_omega = " + std::to_string(bound) +
                           ")");
  }
}

PeriodicWave::PeriodicWave(WaveParams params, std::vector<double> h,
                           std::vector<double> hprime, WaveOrigin origin,
                           WaveDiagnostics diagnostics)
    : params_(std::move(params)),
      h_(std::move(h)),
      hp_(std::move(hprime)),
      origin_(origin),
      diagnostics_(diagnostics) {
  check_k_omega(params_.k, params_.omega);
  if (!(params_.L > 0.0)) throw ParameterError("wave period must be positive");
  if (h_.size() != hp_.size()) {
    throw ParameterError("wave samples h and h' differ in length");
  }
  if (h_.size() < 4 || h_.size() % 2 != 0) {
    throw ParameterError("wave grid size must be even and >= 4");
  }
}

std::vector<double> PeriodicWave::grid() const {
  return uniform_grid(params_.L, h_.size());
}

std::vector<double> PeriodicWave::hsecond() const {
  std::vector<double> out(h_.size());
  const int p = 2 * params_.k + 1;
  for (std::size_t j = 0; j < h_.size(); ++j) {
    out[j] = (-h_[j] + ipow(h_[j], p)) / params_.omega;
  }
  return out;
}

double PeriodicWave::quadrature_defect() const {
  const int k = params_.k;
  const double w = params_.omega;
  const double target = w * params_.B;
  double worst = 0.0;
  for (std::size_t j = 0; j < h_.size(); ++j) {
    const double q = 0.5 * w * hp_[j] * hp_[j] + 0.5 * h_[j] * h_[j] -
                     ipow(h_[j], 2 * k + 2) / (2.0 * k + 2.0);
    worst = std::max(worst, std::abs(q - target));
  }
  return worst;
}

double PeriodicWave::oddness_defect() const {
  const std::size_t n = h_.size();
  double worst = std::abs(2.0 * h_[0]);
  for (std::size_t j = 1; j < n; ++j) {
    worst = std::max(worst, std::abs(h_[j] + h_[n - j]));
  }
  return worst;
}

PeriodicWave explicit_phi4(double L0, Modulus kappa, std::size_t N) {
  check_explicit_inputs(L0, kappa, N);
  const double k2 = kappa.parameter();
  const double K = complete_K(kappa);
  const double a = std::sqrt(2.0) * kappa.value() / std::sqrt(k2 + 1.0);
  const double omega = L0 * L0 / (16.0 * K * K * (1.0 + k2));
  const double c = explicit_speed(omega, "phi^4");
  const double rate = 4.0 * K / L0;

  std::vector<double> h(N);
  std::vector<double> hp(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double x = L0 * static_cast<double>(j) / static_cast<double>(N);
    const EllipticTriple t = jacobi(rate * x, kappa);
    h[j] = a * t.sn;
    hp[j] = a * rate * t.cn * t.dn;
  }
  const double slope0 = a * rate;
  WaveParams params{1, omega, 0.5 * slope0 * slope0, L0, kappa.value(), c};
  PeriodicWave wave(params, std::move(h), std::move(hp),
                    WaveOrigin::kExplicitPhi4);
  WaveDiagnostics diag;
  diag.residual = ode_residual(wave);
  diag.amplitude = a;
  diag.formula_amplitude = a;
  return std::move(wave).with_diagnostics(diag);
}

Phi6Coefficients phi6_coefficients(Modulus kappa) {
  const double k2 = kappa.parameter();
  const double k4 = k2 * k2;
  const double k6 = k4 * k2;
  const double s = k4 - k2 + 1.0;
  const double rs = std::sqrt(s);
  const double b = (k2 + 1.0 - rs) / 3.0;

  const double poly = -1.0 - k6 + 1.5 * k4 + 1.5 * k2;
  const double a_fourth_root =
      std::pow(1458.0, 0.25) * std::pow((poly * rs + s * s) * s * s * s, 0.25) /
      s;
  // sn^6 coefficient of the quadrature form: a^4 / 3 = b^2 + b^3 / sqrt(s).
  const double a_matched = std::pow(3.0 * b * b * (1.0 + b / rs), 0.25);
  return {a_fourth_root, a_matched, b, s};
}

PeriodicWave explicit_phi6(double L0, Modulus kappa, std::size_t N) {
  check_explicit_inputs(L0, kappa, N);
  const Phi6Coefficients coef = phi6_coefficients(kappa);
  const double K = complete_K(kappa);
  const double omega = L0 * L0 / (16.0 * K * K * std::sqrt(coef.s));
  const double c = explicit_speed(omega, "phi^6");
  const double rate = 4.0 * K / L0;

  auto build = [&](double a) {
    std::vector<double> h(N);
    std::vector<double> hp(N);
    for (std::size_t j = 0; j < N; ++j) {
      const double x = L0 * static_cast<double>(j) / static_cast<double>(N);
      const EllipticTriple t = jacobi(rate * x, kappa);
      const double denom = 1.0 - coef.b * t.sn * t.sn;
      h[j] = a * t.sn / std::sqrt(denom);
      hp[j] = a * rate * t.cn * t.dn / (denom * std::sqrt(denom));
    }
    const double slope0 = a * rate;
    WaveParams params{2, omega, 0.5 * slope0 * slope0, L0, kappa.value(), c};
    return PeriodicWave(params, std::move(h), std::move(hp),
                        WaveOrigin::kExplicitPhi6);
  };

  WaveDiagnostics diag;
  diag.formula_amplitude = coef.a_fourth_root;
  double amplitude = coef.a_fourth_root;
  PeriodicWave trial = build(amplitude);
  diag.residual = ode_residual(trial);
  if (!(diag.residual <= kExplicitResidualGate)) {
    spdlog::debug(
        "phi^6 fourth-root amplitude {:.6g} leaves residual {:.3g}; using "
        "coefficient-matched amplitude {:.17g}",
        coef.a_fourth_root, diag.residual, coef.a_matched);
    diag.amplitude_fallback = true;
    amplitude = coef.a_matched;
    trial = build(amplitude);
    diag.residual = ode_residual(trial);
  }
  diag.amplitude = amplitude;
  return std::move(trial).with_diagnostics(diag);
}

PeriodicWave wave_from_energy(int k, double omega, double B, std::size_t N) {
  check_energy_level(k, omega, B);
  if (N < 16 || N % 2 != 0) {
    throw ParameterError("grid size must be even and >= 16");
  }
  const double L = planar::return_time(k, omega, B);
  const std::vector<double> x = uniform_grid(L, N);
  std::vector<double> h(N);
  std::vector<double> hp(N);
  planar::sample_orbit(k, omega, B, x, h, hp);
  h[0] = 0.0;  // exact by construction; the sampler returns it anyway
  WaveParams params{k, omega, B, L, std::nullopt, speed_from_omega(omega)};
  PeriodicWave wave(params, std::move(h), std::move(hp), WaveOrigin::kShooting);
  WaveDiagnostics diag;
  diag.residual = ode_residual(wave);
  diag.amplitude = turning_points(k, omega, B).second;
  diag.formula_amplitude = diag.amplitude;
  return std::move(wave).with_diagnostics(diag);
}

double energy_from_period(int k, double omega, double L0) {
  check_k_omega(k, omega);
  const double center = 2.0 * std::numbers::pi * std::sqrt(omega);
  if (!(L0 > center)) {
    throw NoSolutionError("no periodic orbit with period L0 = " +
                          std::to_string(L0) +
                          ": periods start at 2 pi sqrt(omega) = " +
                          std::to_string(center));
  }
  double lo = 0.0;
  double hi = energy_bound(k, omega);
  // L(B) is strictly increasing from 2 pi sqrt(omega) to +infinity.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (period_quadrature(k, omega, mid) < L0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> turning_points(int k, double omega, double B) {
  check_energy_level(k, omega, B);
  const double target = 2.0 * omega * B;
  auto g = [&](double b) {
    return b * b - ipow(b, 2 * k + 2) / (k + 1.0) - target;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double b2 = 0.5 * (lo + hi);
  return {-b2, b2};
}

double ode_residual(const PeriodicWave& wave) {
  const SpectralDerivative sd(wave.size(), wave.period());
  const std::vector<double> h2 = sd.derivative(wave.h(), 2);
  const auto h = wave.h();
  const int p = 2 * wave.params().k + 1;
  const double w = wave.params().omega;
  double worst = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    worst = std::max(worst, std::abs(-w * h2[j] - h[j] + ipow(h[j], p)));
  }
  return worst;
}

}  // namespace kgwave
