#pragma once

// Shooting on the planar system h' = xi, xi' = (-h + h^{2k+1}) / omega,
// started at (h, xi) = (0, sqrt(2B)) so the orbit has first integral
// xi^2/2 + h^2/(2 omega) - h^{2k+2}/((2k+2) omega) = B.

#include <span>
#include <vector>

namespace kgwave::planar {

// Absolute and relative tolerance of the embedded Runge-Kutta stepper.
inline constexpr double kTolerance = 1e-12;

// Integer power; the nonlinearities are all odd/even integer powers.
constexpr double ipow(double x, int n) noexcept {
  double r = 1.0;
  double b = x;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// First x > 0 at which the orbit returns to h = 0 with xi > 0. Throws
// IntegrationError when the return is not found before 10 * 2 pi sqrt(omega)
// times the given horizon factor.
double return_time(int k, double omega, double B, double horizon_factor = 1.0);

// (h, xi) at the increasing abscissae x (x.front() >= 0).
void sample_orbit(int k, double omega, double B, std::span<const double> x,
                  std::span<double> h, std::span<double> xi);

// The orbit together with a solution of the variational equation
//   -omega y'' - y + potential_factor * (2k+1) h^{2k} y = 0,
// y(0) = y0, y'(0) = yp0. potential_factor = 0 gives the constant-coefficient
// control problem.
struct VariationalPath {
  std::vector<double> h;
  std::vector<double> xi;
  std::vector<double> y;
  std::vector<double> yp;
};
VariationalPath sample_variational(int k, double omega, double B, double y0,
                                   double yp0, std::span<const double> x,
                                   double potential_factor = 1.0);

}  // namespace kgwave::planar
