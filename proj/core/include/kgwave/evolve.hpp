#pragma once

// Pseudo-spectral Stormer-Verlet integration of
//   phi_tt = phi_xx + phi - phi^{2k+1}
// on a periodic grid, with the pseudo-metric distance to the orbit of a
// traveling wave.
//
// The traveling-wave data (h, c h') evolves as phi(x, t) = h(x + c t).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgwave/waves.hpp"

namespace kgwave {

struct FieldState {
  double t = 0.0;
  std::vector<double> phi;
  std::vector<double> psi;  // phi_t
  double L = 0.0;
  int k = 1;
};

enum class PerturbationMode { kGeneric, kOdd };

std::string_view to_string(PerturbationMode m);

// (h, c h') plus epsilon times a unit X-norm direction. kGeneric uses the
// eigenvector of the negative eigenvalue of L_KG; kOdd uses a random smooth
// odd pair from `seed` and needs c = 0 (ParityError otherwise).
FieldState seed_traveling(const PeriodicWave& wave, double c, double epsilon,
                          PerturbationMode mode, std::uint64_t seed = 0);

// Holds the FFT plan for one grid; one per thread.
class Evolver {
 public:
  struct Options {
    // Drop phi^{2k+1}, leaving the linear equation phi_tt = phi_xx + phi.
    bool linear = false;
    // Remove the even part after each step (odd-sector runs).
    bool project_odd = false;
    double blow_up = 1e6;
  };

  Evolver(std::size_t N, double L, int k);
  Evolver(std::size_t N, double L, int k, Options options);
  ~Evolver();
  Evolver(Evolver&&) noexcept;
  Evolver& operator=(Evolver&&) noexcept;

  [[nodiscard]] double dx() const noexcept;
  // Largest admissible |dt|, 0.5 dx.
  [[nodiscard]] double max_dt() const noexcept;

  // One kick-drift-kick step in place. Throws BlowUpError when max |phi|
  // exceeds the blow-up level.
  void step(FieldState& s, double dt) const;

  // E = 1/2 int phi_x^2 + psi^2 - phi^2 + phi^{2k+2}/(k+1),  F = int phi_x psi.
  [[nodiscard]] std::pair<double, double> conserved(const FieldState& s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrappers building an Evolver per call.
FieldState step(const FieldState& state, double dt);
std::pair<double, double> conserved(const FieldState& state);

// inf over translations r of |(phi, psi) - (h, c h')(. + r)|_X: best grid
// shift by FFT cross-correlation, then Newton on the continuous correlation.
double orbit_distance(const FieldState& state, const PeriodicWave& wave,
                      double c);

// Parity defect: max_j |f_j + f_{N-j}| over phi and psi.
double even_part(const FieldState& state);

struct OrbitTrace {
  std::vector<double> times;
  std::vector<double> distances;
  std::vector<double> energies;
  std::vector<double> momenta;
  bool blew_up = false;
  std::string termination = "completed";
  double dt = 0.0;
  std::size_t steps = 0;
  double max_parity_defect = 0.0;  // odd runs only
};

struct ExperimentConfig {
  double c = 0.0;
  double epsilon = 0.0;
  PerturbationMode mode = PerturbationMode::kGeneric;
  double T = 200.0;
  double sample_dt = 1.0;
  double dt_factor = 0.25;  // dt = dt_factor * dx, rounded so T is hit
  std::uint64_t seed = 0;
};

OrbitTrace run_experiment(const PeriodicWave& wave,
                          const ExperimentConfig& config);

}  // namespace kgwave
