#include "kgwave/planar.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "kgwave/errors.hpp"

namespace kgwave::planar {
namespace {

namespace odeint = boost::numeric::odeint;

using State2 = std::array<double, 2>;
using State4 = std::array<double, 4>;

struct OrbitRhs {
  int k;
  double omega;
  void operator()(const State2& s, State2& ds, double /*x*/) const {
    ds[0] = s[1];
    ds[1] = (-s[0] + ipow(s[0], 2 * k + 1)) / omega;
  }
};

struct VariationalRhs {
  int k;
  double omega;
  double potential_factor;
  void operator()(const State4& s, State4& ds, double /*x*/) const {
    const double h2k = ipow(s[0], 2 * k);
    ds[0] = s[1];
    ds[1] = (-s[0] + s[0] * h2k) / omega;
    ds[2] = s[3];
    ds[3] = (-s[2] + potential_factor * (2 * k + 1) * h2k * s[2]) / omega;
  }
};

template <class State>
auto make_stepper() {
  return odeint::make_controlled(kTolerance, kTolerance,
                                 odeint::runge_kutta_fehlberg78<State>());
}

State2 initial_state(double B) {
  if (!(B > 0.0)) {
    throw EnergyLevelError("energy level must be positive");
  }
  return {0.0, std::sqrt(2.0 * B)};
}

void require_increasing(std::span<const double> x) {
  if (!x.empty() && x.front() < 0.0) {
    throw ParameterError("sample abscissae must be nonnegative");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw ParameterError("sample abscissae must be strictly increasing");
    }
  }
}

}  // namespace

double return_time(int k, double omega, double B, double horizon_factor) {
  const OrbitRhs rhs{k, omega};
  auto stepper = make_stepper<State2>();
  const double horizon =
      horizon_factor * 10.0 * 2.0 * std::numbers::pi * std::sqrt(omega);

  State2 s = initial_state(B);
  double t = 0.0;
  double dt = 1e-3 * std::sqrt(omega);
  bool crossed_down = false;
  int rejected = 0;

  while (t < horizon) {
    const State2 prev = s;
    const double t_prev = t;
    if (stepper.try_step(rhs, s, t, dt) == odeint::fail) {
      if (++rejected > 10000 || dt < 1e-14 * std::sqrt(omega)) {
        throw IntegrationError("planar orbit: step size underflow");
      }
      continue;
    }
    rejected = 0;
    if (!crossed_down) {
      crossed_down = s[0] < 0.0;
      continue;
    }
    if (s[0] < 0.0) continue;

    // The return lies in (t_prev, t]. Newton on x -> h(x) with h' = xi,
    // re-integrating from the bracketing state each time.
    double x = t_prev - prev[0] / prev[1];
    for (int it = 0; it < 20; ++it) {
      State2 probe = prev;
      auto refine = make_stepper<State2>();
      if (x > t_prev) {
        odeint::integrate_adaptive(refine, rhs, probe, t_prev, x,
                                   0.25 * (x - t_prev));
      }
      const double dx = -probe[0] / probe[1];
      x += dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
        break;
      }
    }
    return x;
  }
  throw IntegrationError("planar orbit: no return to h = 0 within x = " +
                         std::to_string(horizon));
}

void sample_orbit(int k, double omega, double B, std::span<const double> x,
                  std::span<double> h, std::span<double> xi) {
  if (h.size() != x.size() || xi.size() != x.size()) {
    throw ParameterError("sample_orbit: size mismatch");
  }
  require_increasing(x);
  if (x.empty()) return;
  const OrbitRhs rhs{k, omega};
  State2 s = initial_state(B);
  std::size_t idx = 0;
  auto observer = [&](const State2& st, double /*t*/) {
    h[idx] = st[0];
    xi[idx] = st[1];
    ++idx;
  };
  if (x.front() > 0.0) {
    odeint::integrate_adaptive(make_stepper<State2>(), rhs, s, 0.0, x.front(),
                               1e-3 * std::sqrt(omega));
  }
  odeint::integrate_times(make_stepper<State2>(), rhs, s, x.begin(), x.end(),
                          1e-3 * std::sqrt(omega), observer);
}

VariationalPath sample_variational(int k, double omega, double B, double y0,
                                   double yp0, std::span<const double> x,
                                   double potential_factor) {
  require_increasing(x);
  VariationalPath out;
  out.h.reserve(x.size());
  out.xi.reserve(x.size());
  out.y.reserve(x.size());
  out.yp.reserve(x.size());
  if (x.empty()) return out;

  const VariationalRhs rhs{k, omega, potential_factor};
  const State2 s0 = initial_state(B);
  State4 s{s0[0], s0[1], y0, yp0};
  auto observer = [&](const State4& st, double /*t*/) {
    out.h.push_back(st[0]);
    out.xi.push_back(st[1]);
    out.y.push_back(st[2]);
    out.yp.push_back(st[3]);
  };
  if (x.front() > 0.0) {
    odeint::integrate_adaptive(make_stepper<State4>(), rhs, s, 0.0, x.front(),
                               1e-3 * std::sqrt(omega));
  }
  odeint::integrate_times(make_stepper<State4>(), rhs, s, x.begin(), x.end(),
                          1e-3 * std::sqrt(omega), observer);
  return out;
}

}  // namespace kgwave::planar
