#include "kgwave/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "kgwave/errors.hpp"
#include "kgwave/planar.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/spectral.hpp"

namespace kgwave {

double phi4_omega(double L0, double kappa) {
  const Modulus m(kappa);
  const double K = complete_K(m);
  return L0 * L0 / (16.0 * K * K * (1.0 + m.parameter()));
}

double phi6_omega(double L0, double kappa) {
  const Modulus m(kappa);
  const double K = complete_K(m);
  const double k2 = m.parameter();
  return L0 * L0 / (16.0 * K * K * std::sqrt(k2 * k2 - k2 + 1.0));
}

namespace {

using planar::ipow;

constexpr double kRichardsonTolerance = 1e-3;
constexpr double kKappaStep = 1e-6;

// The fixed-period family at omega, omega +- delta and omega +- delta/2.
struct Stencil {
  double delta = 0.0;
  FamilyPoint center;
  FamilyPoint plus;
  FamilyPoint minus;
  FamilyPoint plus_half;
  FamilyPoint minus_half;
};

Stencil build_stencil(int k, double L0, double omega) {
  Stencil s;
  s.delta = omega_step(L0, omega);
  s.center = family_point(k, L0, omega);
  s.plus = family_point(k, L0, omega + s.delta);
  s.minus = family_point(k, L0, omega - s.delta);
  s.plus_half = family_point(k, L0, omega + 0.5 * s.delta);
  s.minus_half = family_point(k, L0, omega - 0.5 * s.delta);
  return s;
}

Estimate finish(Estimate e) {
  e.richardson_ok = std::abs(e.value - e.half_step_value) <=
                    kRichardsonTolerance * std::abs(e.value);
  return e;
}

Estimate d2_direct_from(const Stencil& s) {
  const double w = s.center.omega;
  const double I = s.center.int_hp2;
  auto route = [&](const FamilyPoint& hi, const FamilyPoint& lo, double delta) {
    const double dI = (hi.int_hp2 - lo.int_hp2) / (2.0 * delta);
    return -I + 2.0 * (1.0 - w) * dI;
  };
  Estimate e;
  e.value = route(s.plus, s.minus, s.delta);
  e.half_step_value = route(s.plus_half, s.minus_half, 0.5 * s.delta);
  return finish(e);
}

Estimate d2_simplified_from(const Stencil& s, double L0) {
  const double w = s.center.omega;
  const double I = s.center.int_hp2;
  const double hp0 = s.center.hprime0;
  auto route = [&](const FamilyPoint& hi, const FamilyPoint& lo, double delta) {
    const double eta0 = (hi.hprime0 - lo.hprime0) / (2.0 * delta);
    return -I / w + 2.0 * L0 * (1.0 - w) * hp0 * eta0 +
           (1.0 - w) * hp0 * hp0 * L0 / w;
  };
  Estimate e;
  e.value = route(s.plus, s.minus, s.delta);
  e.half_step_value = route(s.plus_half, s.minus_half, 0.5 * s.delta);
  return finish(e);
}

// Decreasing omega(kappa) inverted by bisection on [0, kMaxModulus].
std::optional<double> invert_decreasing(const std::function<double(double)>& f,
                                        double omega) {
  double lo = 0.0;
  double hi = kMaxModulus;
  if (!(omega < f(lo)) || !(omega > f(hi))) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) > omega) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void require_kappa_stencil(double kappa) {
  if (!(kappa - kKappaStep > 0.0) || !(kappa + kKappaStep <= kMaxModulus)) {
    throw StencilError("kappa stencil leaves (0, 1) at kappa = " +
                       std::to_string(kappa));
  }
}

}  // namespace

FamilyPoint family_point(int k, double L0, double omega, std::size_t N) {
  FamilyPoint p;
  p.omega = omega;
  p.B = energy_from_period(k, omega, L0);
  const PeriodicWave wave = wave_from_energy(k, omega, p.B, N);
  p.period = wave.period();
  p.hprime0 = std::sqrt(2.0 * p.B);
  std::vector<double> f1(N);
  std::vector<double> f2(N);
  std::vector<double> f3(N);
  const auto h = wave.h();
  const auto hp = wave.hprime();
  for (std::size_t j = 0; j < N; ++j) {
    f1[j] = hp[j] * hp[j];
    f2[j] = h[j] * h[j];
    f3[j] = ipow(h[j], 2 * k + 2);
  }
  p.int_hp2 = periodic_integral(f1, p.period);
  p.int_h2 = periodic_integral(f2, p.period);
  p.int_h2k2 = periodic_integral(f3, p.period);
  return p;
}

double omega_existence_bound(double L0) {
  return L0 * L0 / (4.0 * std::numbers::pi * std::numbers::pi);
}

double omega_step(double L0, double omega) {
  const double top = omega_existence_bound(L0);
  if (!(omega > 0.0) || !(omega < top)) {
    throw StencilError("omega = " + std::to_string(omega) +
                       " outside the family range (0, " + std::to_string(top) +
                       ") for L0 = " + std::to_string(L0));
  }
  // Near top the family behaves like (top - omega)^{1/(2k)}; stay well inside.
  return std::min(1e-4 * omega, 0.01 * (top - omega));
}

Estimate d2_direct(int k, double L0, double omega) {
  return d2_direct_from(build_stencil(k, L0, omega));
}

Estimate d2_simplified(int k, double L0, double omega) {
  return d2_simplified_from(build_stencil(k, L0, omega), L0);
}

ClosedPhi4 d2_closed_phi4(double L0, Modulus kappa) {
  require_kappa_stencil(kappa.value());
  auto p_of = [](double x) {
    const Modulus m(x);
    const CompleteIntegrals ke = complete_KE(m);
    return (1.0 + m.parameter()) * ke.E - (1.0 - m.parameter()) * ke.K;
  };
  auto f = [&](double x) {
    return complete_K(Modulus(x)) * p_of(x) / (1.0 + x * x);
  };
  auto g = [](double x) {
    const double K = complete_K(Modulus(x));
    return 1.0 / (K * K * (1.0 + x * x));
  };
  const double x = kappa.value();
  const double h = kKappaStep;
  ClosedPhi4 r;
  r.omega = phi4_omega(L0, x);
  if (!(r.omega < 1.0)) {
    throw ParameterError("phi^4 family: omega = " + std::to_string(r.omega) +
                         " >= 1 has no real wave speed");
  }
  r.p = p_of(x);
  r.q = (f(x + h) - f(x - h)) / (g(x + h) - g(x - h));
  const double K = complete_K(kappa);
  r.d2 = -32.0 * K * r.p / (3.0 * (1.0 + x * x) * L0) +
         1024.0 * (1.0 - r.omega) * r.q / (3.0 * L0 * L0 * L0);
  r.p_positive = r.p > 0.0;
  r.q_negative = r.q < 0.0;
  return r;
}

double byrd_cn2dn2_closed(Modulus kappa) {
  const double m = kappa.parameter();
  if (m == 0.0) return std::numbers::pi / 4.0;
  const CompleteIntegrals ke = complete_KE(kappa);
  return ((1.0 + m) * ke.E - (1.0 - m) * ke.K) / (3.0 * m);
}

BetaTau beta_tau_phi6(double L0, Modulus kappa) {
  require_kappa_stencil(kappa.value());
  const double x = kappa.value();
  const double h = kKappaStep;
  auto hp0 = [&](double y) {
    return std::sqrt(2.0 * explicit_phi6(L0, Modulus(y)).params().B);
  };
  const PeriodicWave wave = explicit_phi6(L0, kappa);
  BetaTau r;
  r.omega = wave.params().omega;
  const double s0 = std::sqrt(2.0 * wave.params().B);
  const double eta0 = (hp0(x + h) - hp0(x - h)) /
                      (phi6_omega(L0, x + h) - phi6_omega(L0, x - h));
  const double w = r.omega;
  r.beta = 2.0 * L0 * (1.0 - w) * s0 * eta0 + (1.0 - w) / w * s0 * s0 * L0;

  std::vector<double> f(wave.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] = wave.hprime()[j] * wave.hprime()[j];
  }
  r.int_hp2 = periodic_integral(f, wave.period());

  const double K = complete_K(kappa);
  const double k2 = kappa.parameter();
  const double s = k2 * k2 - k2 + 1.0;
  r.prefactor = 72.0 * (x + 1.0) * k2 * (L0 * L0 - 16.0 * K * K * std::sqrt(s)) /
                (L0 * L0 * L0);
  r.tau = r.beta / r.prefactor;
  r.tau_positive = r.tau > 0.0;
  return r;
}

std::optional<double> kappa_for_phi4(double L0, double omega) {
  return invert_decreasing([&](double k) { return phi4_omega(L0, k); }, omega);
}

std::optional<double> kappa_for_phi6(double L0, double omega) {
  return invert_decreasing([&](double k) { return phi6_omega(L0, k); }, omega);
}

double action(int k, double L0, double omega) {
  const FamilyPoint p = family_point(k, L0, omega);
  return 0.5 * (omega * p.int_hp2 - p.int_h2 + p.int_h2k2 / (k + 1.0));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kUnstableInX:
      return "unstable_in_X";
    case Verdict::kStableInXOdd:
      return "stable_in_X_odd";
    case Verdict::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

StabilityReport classify(int k, double L0, double omega,
                         std::size_t spectral_N) {
  StabilityReport r;
  r.k = k;
  r.L0 = L0;
  r.omega = omega;
  const auto c = speed_from_omega(omega);
  if (!c) {
    r.reason = "omega > 1: no real wave speed";
    return r;
  }
  r.c = *c;

  std::optional<PeriodicWave> wave;
  try {
    r.B = energy_from_period(k, omega, L0);
    wave = wave_from_energy(k, omega, r.B);
    const SpectrumReport kg = kg_block_spectrum(*wave, r.c, spectral_N);
    r.n_negative = kg.n_negative;
    r.n_zero = kg.n_zero;
  } catch (const Error& e) {
    r.reason = e.what();
    return r;
  }

  if (r.c == 0.0) {
    try {
      r.sigma = odd_spectrum(*wave, spectral_N).eigenvalues.front();
    } catch (const Error& e) {
      r.reason = e.what();
    }
  }

  bool routes_ok = true;
  bool all_negative = true;
  std::string route_reason;
  try {
    const Stencil s = build_stencil(k, L0, omega);
    r.d2_direct = d2_direct_from(s);
    r.d2_simplified = d2_simplified_from(s, L0);
    all_negative = r.d2_direct.value < 0.0 && r.d2_simplified.value < 0.0;
  } catch (const Error& e) {
    routes_ok = false;
    route_reason = e.what();
  }

  try {
    if (k == 1) {
      if (const auto kap = kappa_for_phi4(L0, omega)) {
        r.kappa = *kap;
        const ClosedPhi4 cf = d2_closed_phi4(L0, Modulus(*kap));
        r.d2_closed = cf.d2;
        r.p = cf.p;
        r.q = cf.q;
        all_negative = all_negative && cf.d2 < 0.0;
      }
    } else if (k == 2) {
      if (const auto kap = kappa_for_phi6(L0, omega)) {
        r.kappa = *kap;
        const BetaTau bt = beta_tau_phi6(L0, Modulus(*kap));
        r.beta = bt.beta;
        r.tau = bt.tau;
      }
    }
  } catch (const Error& e) {
    // The closed-form routes are supplementary; their absence is recorded.
    route_reason += std::string(route_reason.empty() ? "" : "; ") + e.what();
  }

  if (r.sigma && *r.sigma > 0.0) {
    r.verdict = Verdict::kStableInXOdd;
    r.reason = "c = 0 and the odd-sector operator is positive";
    return r;
  }
  if (r.n_negative != 1 || r.n_zero != 1) {
    r.reason = "inertial index (" + std::to_string(r.n_negative) + ", " +
               std::to_string(r.n_zero) + ") differs from (1, 1)";
    return r;
  }
  if (!routes_ok) {
    r.reason = "d'' unavailable: " + route_reason;
    return r;
  }
  if (!all_negative) {
    r.reason = "d'' is not negative on every route";
    return r;
  }
  r.verdict = Verdict::kUnstableInX;
  r.reason = route_reason.empty() ? "(n, z) = (1, 1) and d'' < 0"
                                  : "(n, z) = (1, 1) and d'' < 0; " + route_reason;
  return r;
}

}  // namespace kgwave
