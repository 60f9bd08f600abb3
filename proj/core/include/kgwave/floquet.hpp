#pragma once

// The theta-constant of the Hill equation  -omega y'' - y + (2k+1) h^{2k} y = 0.
//
// h' spans the periodic solutions; the second solution ybar with ybar(0) = 0,
// ybar'(0) = 1/h'(0) satisfies ybar(x + L) = ybar(x) + theta h'(x).

#include <vector>

#include "kgwave/waves.hpp"

namespace kgwave {

// ybar and ybar' sampled at the requested abscissae, with the orbit alongside.
struct YbarSamples {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yp;
  std::vector<double> h;
  std::vector<double> hp;
};

// Integrates the IVP with the stepper tolerance of the shooting module.
// potential_factor scales (2k+1) h^{2k}; 0 gives the constant-coefficient
// control problem. x must be increasing and start at or after 0; an empty x
// means the wave grid plus the endpoint L.
YbarSamples solve_ybar(const PeriodicWave& wave, std::vector<double> x = {},
                       double potential_factor = 1.0);

struct ThetaResult {
  double theta = 0.0;
  double ybar_at_L = 0.0;
  double hprime_at_0 = 0.0;
  double period = 0.0;
  // max |W + 1| over [0, 2L], W = ybar h'' - ybar' h'.
  double wronskian_drift = 0.0;
  // max over the grid of |ybar(x + L) - ybar(x) - theta h'(x)|.
  double relation_defect = 0.0;
};

ThetaResult theta(const PeriodicWave& wave);

enum class KernelDimension { kSimple, kDouble };

// Simple iff |theta| > 1e-6 L; a tie counts as double.
KernelDimension kernel_dimension_criterion(const ThetaResult& r);

inline constexpr double kKernelThetaScale = 1e-6;

}  // namespace kgwave
