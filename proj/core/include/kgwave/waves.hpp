#pragma once

// Odd periodic solutions of  -omega h'' - h + h^{2k+1} = 0.
//
// Every wave is normalized with h(0) = 0 and h'(0) = sqrt(2B) > 0, where B is
// the level of  E(h, xi) = xi^2/2 + h^2/(2 omega) - h^{2k+2}/((2k+2) omega).
// Periodic orbits exist for 0 < B < B_omega = k / (2 omega (k+1)).

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kgwave/specfun.hpp"

namespace kgwave {

inline constexpr std::size_t kDefaultGridSize = 512;

// B_omega, the energy of the separatrix through (+-1, 0).
double energy_bound(int k, double omega);

// Wave speed for omega = 1 - c^2 on the positive branch; empty when omega > 1.
std::optional<double> speed_from_omega(double omega);

struct WaveParams {
  int k = 1;
  double omega = 1.0;
  double B = 0.0;
  double L = 0.0;
  std::optional<double> kappa;  // closed-form waves only
  std::optional<double> c;      // present iff omega <= 1

  [[nodiscard]] double energy_bound() const { return kgwave::energy_bound(k, omega); }
  // A = omega * B, the constant of the integrated quadrature form.
  [[nodiscard]] double quadrature_constant() const { return omega * B; }
};

enum class WaveOrigin { kExplicitPhi4, kExplicitPhi6, kShooting, kUser };

struct WaveDiagnostics {
  // max |-omega h'' - h + h^{2k+1}| at construction.
  double residual = 0.0;
  // phi^6 only: the fourth-root amplitude formula did not zero the residual
  // and the coefficient-matched amplitude was used instead.
  bool amplitude_fallback = false;
  double formula_amplitude = 0.0;
  double amplitude = 0.0;
};

// One sampled wave on N equispaced points of [0, L). Immutable after
// construction.
class PeriodicWave {
 public:
  PeriodicWave(WaveParams params, std::vector<double> h,
               std::vector<double> hprime, WaveOrigin origin = WaveOrigin::kUser,
               WaveDiagnostics diagnostics = {});

  [[nodiscard]] const WaveParams& params() const noexcept { return params_; }
  [[nodiscard]] std::size_t size() const noexcept { return h_.size(); }
  [[nodiscard]] double period() const noexcept { return params_.L; }
  [[nodiscard]] double dx() const noexcept {
    return params_.L / static_cast<double>(h_.size());
  }
  [[nodiscard]] double x(std::size_t j) const noexcept {
    return params_.L * static_cast<double>(j) / static_cast<double>(h_.size());
  }
  [[nodiscard]] std::vector<double> grid() const;
  [[nodiscard]] std::span<const double> h() const noexcept { return h_; }
  [[nodiscard]] std::span<const double> hprime() const noexcept { return hp_; }
  // h'' from the ODE itself: (-h + h^{2k+1}) / omega.
  [[nodiscard]] std::vector<double> hsecond() const;
  [[nodiscard]] WaveOrigin origin() const noexcept { return origin_; }
  [[nodiscard]] const WaveDiagnostics& diagnostics() const noexcept {
    return diagnostics_;
  }
  // Same samples, new diagnostics.
  [[nodiscard]] PeriodicWave with_diagnostics(WaveDiagnostics d) && {
    diagnostics_ = d;
    return std::move(*this);
  }

  // max over the grid of |omega h'^2/2 + h^2/2 - h^{2k+2}/(2k+2) - omega B|.
  [[nodiscard]] double quadrature_defect() const;
  // max_j |h(x_j) + h(L - x_j)|
  [[nodiscard]] double oddness_defect() const;

 private:
  WaveParams params_;
  std::vector<double> h_;
  std::vector<double> hp_;
  WaveOrigin origin_;
  WaveDiagnostics diagnostics_;
};

// h(x) = a sn(4 K x / L0, kappa), a = sqrt(2) kappa / sqrt(1 + kappa^2),
// omega = L0^2 / (16 K^2 (1 + kappa^2)). Requires omega < 1.
PeriodicWave explicit_phi4(double L0, Modulus kappa,
                           std::size_t N = kDefaultGridSize);

// h(x) = a sn / sqrt(1 - b sn^2), b = (1 + kappa^2 - sqrt(s)) / 3,
// omega = L0^2 / (16 K^2 sqrt(s)), s = kappa^4 - kappa^2 + 1.
PeriodicWave explicit_phi6(double L0, Modulus kappa,
                           std::size_t N = kDefaultGridSize);

// Coefficients of the closed-form phi^6 wave. `a_fourth_root` is the
// fourth-root amplitude expression in s(kappa); `a_matched` is obtained by
// equating coefficients of sn^0..sn^6 in the quadrature form.
struct Phi6Coefficients {
  double a_fourth_root;
  double a_matched;
  double b;
  double s;
};
Phi6Coefficients phi6_coefficients(Modulus kappa);

// Shooting from (0, sqrt(2B)) to the first return; resampled on N points.
PeriodicWave wave_from_energy(int k, double omega, double B,
                              std::size_t N = kDefaultGridSize);

// Unique B in (0, B_omega) whose orbit has period L0 (bisection on the
// quadrature period map). Throws NoSolutionError if L0 <= 2 pi sqrt(omega).
double energy_from_period(int k, double omega, double L0);

// (b1, b2) = (min h, max h); b2 is the root in (0, 1) of
// h^2 - h^{2k+2}/(k+1) = 2 omega B.
std::pair<double, double> turning_points(int k, double omega, double B);

// max |-omega h'' - h + h^{2k+1}| with h'' by spectral differentiation.
double ode_residual(const PeriodicWave& wave);

// Throws EnergyLevelError unless 0 < B < B_omega.
void check_energy_level(int k, double omega, double B);

}  // namespace kgwave
