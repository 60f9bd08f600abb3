#include "kgwave/period.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/trapezoidal.hpp>

#include "kgwave/errors.hpp"
#include "kgwave/planar.hpp"
#include "kgwave/waves.hpp"

namespace kgwave {
namespace {

using planar::ipow;

constexpr double kRichardsonTolerance = 1e-4;
constexpr double kFdTolerance = 1e-6;

}  // namespace

double period_quadrature(int k, double omega, double B) {
  check_energy_level(k, omega, B);
  const double b2 = turning_points(k, omega, B).second;
  const double scale = ipow(b2, 2 * k) / (k + 1.0);
  auto f = [&](double theta) {
    const double s2 = std::sin(theta) * std::sin(theta);
    double sum = 1.0;
    double term = 1.0;
    for (int j = 1; j <= k; ++j) {
      term *= s2;
      sum += term;
    }
    return 1.0 / std::sqrt(1.0 - scale * sum);
  };
  // f depends on sin^2, so it is even about both ends of [0, pi/2] and the
  // trapezoid rule converges geometrically.
  double err = 0.0;
  const double quarter = boost::math::quadrature::trapezoidal(
      f, 0.0, 0.5 * std::numbers::pi, 1e-15, 24, &err);
  return 4.0 * std::sqrt(omega) * quarter;
}

double period_shooting(int k, double omega, double B) {
  check_energy_level(k, omega, B);
  return planar::return_time(k, omega, B);
}

PeriodDerivative dL_dB(int k, double omega, double B) {
  const double bound = energy_bound(k, omega);
  check_energy_level(k, omega, B);
  PeriodDerivative d;
  d.step = std::min({1e-6, 1e-3 * B, 1e-3 * (bound - B)});
  if (!(B - d.step > 0.0) || !(B + d.step < bound)) {
    throw StencilError("L_B stencil leaves (0, B_omega) at B = " +
                       std::to_string(B));
  }
  auto central = [&](double s) {
    return (period_quadrature(k, omega, B + s) -
            period_quadrature(k, omega, B - s)) /
           (2.0 * s);
  };
  d.value = central(d.step);
  d.half_step_value = central(0.5 * d.step);
  d.richardson_ok = std::abs(d.value - d.half_step_value) <=
                    kRichardsonTolerance * std::abs(d.value);
  d.positive = d.value > 0.0;
  return d;
}

double monotonicity_function(int k, double h) {
  if (!(std::abs(h) < 1.0)) {
    throw DomainError("monotonicity function needs |h| < 1, got " +
                      std::to_string(h));
  }
  const double h2k = ipow(h, 2 * k);
  return -k * ipow(h, 2 * k - 1) * (1.0 + 2.0 * k - h2k) /
         ((1.0 + k) * ipow(h2k - 1.0, 3));
}

double monotonicity_derivative(int k, double h) {
  if (!(std::abs(h) < 1.0)) {
    throw DomainError("monotonicity function needs |h| < 1, got " +
                      std::to_string(h));
  }
  const double h2k = ipow(h, 2 * k);
  const double kk = k;
  const double bracket = (-2.0 * kk - 8.0 * kk * kk - 2.0) * h2k +
                         (2.0 * kk + 1.0) * h2k * h2k + 1.0 - 4.0 * kk * kk;
  return -kk * ipow(h, 2 * k - 2) / ((kk + 1.0) * ipow(h2k - 1.0, 4)) * bracket;
}

std::vector<MonotonicityRow> monotonicity_certificate(
    int k, std::span<const double> h_grid) {
  if (k < 1) throw ParameterError("nonlinearity exponent k must be >= 1");
  std::vector<MonotonicityRow> rows;
  rows.reserve(h_grid.size());
  for (double h : h_grid) {
    MonotonicityRow r;
    r.h = h;
    r.I = monotonicity_function(k, h);
    r.dI = monotonicity_derivative(k, h);
    // Relative step: I behaves like h^{2k-1} near 0 and has poles at +-1.
    const double gap = std::min(std::abs(h), 1.0 - std::abs(h));
    const double eps = gap > 0.0 ? 1e-4 * gap : 1e-5;
    r.dI_fd = (monotonicity_function(k, h + eps) -
               monotonicity_function(k, h - eps)) /
              (2.0 * eps);
    r.positive = h == 0.0 ? r.dI >= 0.0 : r.dI > 0.0;
    const bool both_tiny = std::abs(r.dI) < 1e-8 && std::abs(r.dI_fd) < 1e-8;
    r.fd_agrees =
        both_tiny || std::abs(r.dI - r.dI_fd) <= kFdTolerance * std::abs(r.dI);
    rows.push_back(r);
  }
  return rows;
}

PeriodMapSample sample_period_map(int k, double omega, double B) {
  PeriodMapSample s;
  s.k = k;
  s.omega = omega;
  s.B = B;
  s.L_quadrature = period_quadrature(k, omega, B);
  s.L_shooting = period_shooting(k, omega, B);
  s.L_B = dL_dB(k, omega, B);
  return s;
}

}  // namespace kgwave
