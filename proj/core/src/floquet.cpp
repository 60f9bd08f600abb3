#include "kgwave/floquet.hpp"

#include <algorithm>
#include <cmath>

#include "kgwave/errors.hpp"
#include "kgwave/planar.hpp"

namespace kgwave {
namespace {

using planar::ipow;

double hsecond(int k, double omega, double h) {
  return (-h + ipow(h, 2 * k + 1)) / omega;
}

}  // namespace

YbarSamples solve_ybar(const PeriodicWave& wave, std::vector<double> x,
                       double potential_factor) {
  const WaveParams& p = wave.params();
  if (x.empty()) {
    x = wave.grid();
    x.push_back(wave.period());
  }
  const double slope0 = std::sqrt(2.0 * p.B);
  planar::VariationalPath path = planar::sample_variational(
      p.k, p.omega, p.B, 0.0, 1.0 / slope0, x, potential_factor);
  return {std::move(x), std::move(path.y), std::move(path.yp),
          std::move(path.h), std::move(path.xi)};
}

ThetaResult theta(const PeriodicWave& wave) {
  const WaveParams& p = wave.params();
  const std::size_t n = wave.size();
  const double L = wave.period();

  // x_0..x_{N-1}, L, x_1 + L, ..., x_{N-1} + L, 2L
  std::vector<double> x = wave.grid();
  x.reserve(2 * n + 1);
  for (std::size_t j = 0; j < n; ++j) x.push_back(x[j] + L);
  x.push_back(2.0 * L);
  const YbarSamples s = solve_ybar(wave, x);

  ThetaResult r;
  r.period = L;
  r.hprime_at_0 = s.hp.front();
  r.ybar_at_L = s.y[n];
  r.theta = r.ybar_at_L / r.hprime_at_0;

  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double w = s.y[i] * hsecond(p.k, p.omega, s.h[i]) - s.yp[i] * s.hp[i];
    r.wronskian_drift = std::max(r.wronskian_drift, std::abs(w + 1.0));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double d = s.y[j + n] - s.y[j] - r.theta * s.hp[j];
    r.relation_defect = std::max(r.relation_defect, std::abs(d));
  }
  return r;
}

KernelDimension kernel_dimension_criterion(const ThetaResult& r) {
  return std::abs(r.theta) > kKernelThetaScale * r.period
             ? KernelDimension::kSimple
             : KernelDimension::kDouble;
}

}  // namespace kgwave
