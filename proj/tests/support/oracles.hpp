#pragma once

// Reference values computed independently of the library: Boost.Math
// quadrature and special functions, odeint with a different stepper.

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// K(kappa) by 61-point Gauss-Kronrod on the defining integral.
inline double K(double kappa) {
  auto f = [&](double t) {
    const double s = std::sin(t);
    return 1.0 / std::sqrt(1.0 - kappa * kappa * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, kPi / 2, 20, 1e-15);
}

inline double E(double kappa) {
  auto f = [&](double t) {
    const double s = std::sin(t);
    return std::sqrt(1.0 - kappa * kappa * s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, kPi / 2, 20, 1e-15);
}

// (sn, cn, dn) from Boost.Math, which takes the modulus.
inline std::array<double, 3> jacobi(double x, double kappa) {
  double cn = 0.0;
  double dn = 0.0;
  const double sn = boost::math::jacobi_elliptic(kappa, x, &cn, &dn);
  return {sn, cn, dn};
}

// (sn, cn, dn) by integrating sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn
// from (0, 1, 1) with Dormand-Prince at 1e-14.
inline std::array<double, 3> jacobi_ode(double x, double kappa) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 3>;
  State s{0.0, 1.0, 1.0};
  auto rhs = [&](const State& y, State& dy, double) {
    dy[0] = y[1] * y[2];
    dy[1] = -y[0] * y[2];
    dy[2] = -kappa * kappa * y[0] * y[1];
  };
  odeint::integrate_adaptive(
      odeint::make_controlled(1e-14, 1e-14,
                              odeint::runge_kutta_dopri5<State>()),
      rhs, s, 0.0, x, 1e-3);
  return s;
}

// Positive root of b^2 - b^{2k+2}/(k+1) = 2 omega B.
inline double turning_point(int k, double omega, double B) {
  auto g = [&](double b) {
    return b * b - std::pow(b, 2 * k + 2) / (k + 1.0) - 2.0 * omega * B;
  };
  boost::math::tools::eps_tolerance<double> tol(52);
  const auto r = boost::math::tools::bisect(g, 0.0, 1.0, tol);
  return 0.5 * (r.first + r.second);
}

// L = 4 int_0^{b2} dh / sqrt(2B - (h^2 - h^{2k+2}/(k+1)) / omega), the
// inverse-square-root endpoint singularity handled by tanh-sinh.
inline double period(int k, double omega, double B) {
  const double b2 = turning_point(k, omega, B);
  // b2^2 - h^2 - (b2^{2k+2} - h^{2k+2})/(k+1) factored through b2 - h, which
  // tanh-sinh supplies exactly as hc near the right endpoint.
  auto f = [&](double h, double hc) {
    const double gap = h > 0.5 * b2 ? hc : b2 - h;
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) sum += std::pow(b2, 2 * j) * std::pow(h, 2 * (k - j));
    const double d = gap * (b2 + h) * (1.0 - sum / (k + 1.0));
    return 1.0 / std::sqrt(d / omega);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  return 4.0 * ts.integrate(f, 0.0, b2);
}

// int_0^K cn^2 dn^2 by Gauss-Kronrod over Boost's Jacobi functions.
inline double cn2dn2(double kappa) {
  auto f = [&](double x) {
    const auto t = jacobi(x, kappa);
    return t[1] * t[1] * t[2] * t[2];
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, K(kappa), 20, 1e-15);
}

// Solution of -omega y'' - y + f (2k+1) h^{2k} y = 0 along the orbit started
// at (0, sqrt(2B)), with y(0) = y0, y'(0) = yp0; returns (h, h', y, y') at x.
inline std::array<double, 4> variational(int k, double omega, double B,
                                         double y0, double yp0, double x,
                                         double f = 1.0) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 4>;
  State s{0.0, std::sqrt(2.0 * B), y0, yp0};
  auto rhs = [&](const State& u, State& du, double) {
    const double h2k = std::pow(u[0], 2 * k);
    du[0] = u[1];
    du[1] = (-u[0] + u[0] * h2k) / omega;
    du[2] = u[3];
    du[3] = (-u[2] + f * (2 * k + 1) * h2k * u[2]) / omega;
  };
  odeint::integrate_adaptive(
      odeint::make_controlled(1e-13, 1e-13,
                              odeint::runge_kutta_dopri5<State>()),
      rhs, s, 0.0, x, 1e-3);
  return s;
}

// theta = ybar(L) / h'(0) with ybar(0) = 0, ybar'(0) = 1 / h'(0).
inline double theta(int k, double omega, double B) {
  const double hp0 = std::sqrt(2.0 * B);
  const auto s = variational(k, omega, B, 0.0, 1.0 / hp0, period(k, omega, B));
  return s[2] / hp0;
}

}  // namespace oracle
