#pragma once

// The period map L(omega, B) of the planar orbits and its B-derivative.

#include <span>
#include <vector>

namespace kgwave {

// L(omega, B) by the substitution h = b2 sin(theta), which removes both
// turning-point singularities:
//   L = 4 sqrt(omega) int_0^{pi/2} dtheta / sqrt(1 - b2^{2k}/(k+1) sum_{j<=k} sin^{2j})
// Trapezoid rule with doubling; absolute accuracy well below 1e-10.
double period_quadrature(int k, double omega, double B);

// Same quantity from the shooting integrator (first return to h = 0).
double period_shooting(int k, double omega, double B);

struct PeriodDerivative {
  double value = 0.0;            // central difference at `step`
  double half_step_value = 0.0;  // central difference at step / 2
  double step = 0.0;
  bool richardson_ok = false;    // the two agree to 1e-4 relative
  bool positive = false;         // value > 0, reported rather than enforced
};

// L_B by central differences with step min(1e-6, 1e-3 B, 1e-3 (B_omega - B)).
// Throws StencilError if a stencil point leaves (0, B_omega).
PeriodDerivative dL_dB(int k, double omega, double B);

// I(h) = (F'^2 - 2 F F'') / F'^3 for F(h) = h^2/2 - h^{2k+2}/(2k+2).
double monotonicity_function(int k, double h);
// Closed form of I'(h).
double monotonicity_derivative(int k, double h);

struct MonotonicityRow {
  double h = 0.0;
  double I = 0.0;
  double dI = 0.0;         // closed form
  double dI_fd = 0.0;      // central difference of I
  bool positive = false;   // dI > 0; true at h = 0 unless dI < 0 there
  bool fd_agrees = false;  // |dI - dI_fd| <= 1e-6 |dI|, or both tiny
};

// Tabulates I and I' on the grid. Throws DomainError at |h| >= 1.
std::vector<MonotonicityRow> monotonicity_certificate(
    int k, std::span<const double> h_grid);

struct PeriodMapSample {
  int k = 1;
  double omega = 0.0;
  double B = 0.0;
  double L_quadrature = 0.0;
  double L_shooting = 0.0;
  PeriodDerivative L_B;
};

PeriodMapSample sample_period_map(int k, double omega, double B);

}  // namespace kgwave
