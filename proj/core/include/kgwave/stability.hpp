#pragma once

// The stability index d''(c) along the fixed-period family omega -> h_omega,
// omega = 1 - c^2, and the resulting orbital-stability verdict.
//
//   d''(c) = -int h'^2 + 2 (1 - omega) d/domega int h'^2

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "kgwave/waves.hpp"

namespace kgwave {

// Integrals of the fixed-period wave at (k, L0, omega), from the shooting
// wave with B = energy_from_period(k, omega, L0).
struct FamilyPoint {
  double omega = 0.0;
  double B = 0.0;
  double period = 0.0;
  double int_hp2 = 0.0;    // int h'^2
  double int_h2 = 0.0;     // int h^2
  double int_h2k2 = 0.0;   // int h^{2k+2}
  double hprime0 = 0.0;    // h'(0) = sqrt(2B)
};

FamilyPoint family_point(int k, double L0, double omega,
                         std::size_t N = kDefaultGridSize);

// Upper end of the omega range with waves of period L0: L0^2 / (4 pi^2).
double omega_existence_bound(double L0);

// delta omega = min(1e-4 omega, (omega_max - omega) / 100) for the family
// derivatives. Throws StencilError when omega is not inside (0, omega_max).
double omega_step(double L0, double omega);

// A central-difference estimate with its Richardson half-step companion.
struct Estimate {
  double value = 0.0;
  double half_step_value = 0.0;
  bool richardson_ok = false;  // agree to 1e-3 relative
  // (4 half - full) / 3, cancelling the O(delta^2) term of both stencils.
  [[nodiscard]] double extrapolated() const {
    return (4.0 * half_step_value - value) / 3.0;
  }
};

Estimate d2_direct(int k, double L0, double omega);
Estimate d2_simplified(int k, double L0, double omega);

// Closed form for k = 1 on the explicit snoidal family:
//   d'' = -32 K p / (3 (1 + kappa^2) L0) + 1024 (1 - omega) q / (3 L0^3)
// p = (1 + kappa^2) E - (1 - kappa^2) K,
// q = [d/dkappa (K p / (1 + kappa^2))] / [d/dkappa (1 / (K^2 (1 + kappa^2)))].
struct ClosedPhi4 {
  double d2 = 0.0;
  double p = 0.0;
  double q = 0.0;
  double omega = 0.0;
  bool p_positive = false;
  bool q_negative = false;
};
ClosedPhi4 d2_closed_phi4(double L0, Modulus kappa);

// int_0^K cn^2 dn^2 = p / (3 kappa^2).
double byrd_cn2dn2_closed(Modulus kappa);

// beta from the explicit k = 2 family, tau = beta / prefactor with
// prefactor = 72 (kappa + 1) kappa^2 (L0^2 - 16 K^2 sqrt(s)) / L0^3.
struct BetaTau {
  double beta = 0.0;
  double tau = 0.0;
  double prefactor = 0.0;
  double omega = 0.0;
  double int_hp2 = 0.0;   // int h'^2 of the explicit wave
  bool tau_positive = false;
};
BetaTau beta_tau_phi6(double L0, Modulus kappa);

// omega(kappa) of the explicit k = 1 and k = 2 waves of period L0.
double phi4_omega(double L0, double kappa);
double phi6_omega(double L0, double kappa);

// Inverses of the explicit omega(kappa) maps at fixed L0 (both decreasing in
// kappa); empty when omega lies outside the range of the map.
std::optional<double> kappa_for_phi4(double L0, double omega);
std::optional<double> kappa_for_phi6(double L0, double omega);

// d(c) = E(h, c h') - c F(h, c h') on the fixed-period family at omega.
double action(int k, double L0, double omega);

enum class Verdict { kUnstableInX, kStableInXOdd, kUndetermined };

std::string_view to_string(Verdict v);

struct StabilityReport {
  int k = 1;
  double L0 = 0.0;
  std::optional<double> kappa;
  double omega = 0.0;
  double c = 0.0;
  double B = 0.0;
  Estimate d2_direct;
  std::optional<double> d2_closed;
  Estimate d2_simplified;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> beta;
  std::optional<double> tau;
  int n_negative = 0;
  int n_zero = 0;
  std::optional<double> sigma;  // c = 0 only
  Verdict verdict = Verdict::kUndetermined;
  std::string reason;
};

// Spectral counts of L_KG on `spectral_N` points plus every available d''
// route.
StabilityReport classify(int k, double L0, double omega,
                         std::size_t spectral_N = 256);

}  // namespace kgwave
