#include "kgwave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include <spdlog/spdlog.h>

#include "kgwave/errors.hpp"
#include "kgwave/planar.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/spectral.hpp"

namespace kgwave {
namespace {

using planar::ipow;

// Largest grid used for the eigenvector of the generic perturbation; it is
// resampled onto the wave grid afterwards.
constexpr std::size_t kSeedOperatorSize = 256;

void make_odd(std::span<double> f) {
  const std::size_t n = f.size();
  f[0] = 0.0;
  f[n / 2] = 0.0;
  for (std::size_t j = 1; j < n / 2; ++j) {
    const double odd = 0.5 * (f[j] - f[n - j]);
    f[j] = odd;
    f[n - j] = -odd;
  }
}

// g(x) = f(x + r) by a phase shift of the half spectrum.
std::vector<double> translate(const SpectralDerivative& sd,
                              std::span<const double> f, double r) {
  auto c = sd.half_spectrum(f);
  const std::size_t half = c.size() - 1;
  for (std::size_t m = 0; m <= half; ++m) {
    const double kr = sd.wavenumber(m) * r;
    if (m == half) {
      c[m] = c[m].real() * std::cos(kr);
    } else {
      c[m] *= std::complex<double>(std::cos(kr), std::sin(kr));
    }
  }
  std::vector<double> out(f.size());
  sd.synthesize(c, out);
  return out;
}

}  // namespace

std::string_view to_string(PerturbationMode m) {
  return m == PerturbationMode::kOdd ? "odd" : "generic";
}

struct Evolver::Impl {
  SpectralDerivative sd;
  std::size_t n;
  double L;
  int k;
  Options options;
  mutable std::vector<double> acc;

  Impl(std::size_t N, double length, int power, Options opt)
      : sd(N, length), n(N), L(length), k(power), options(opt), acc(N) {}

  // acc = phi_xx + phi - phi^{2k+1}
  void acceleration(std::span<const double> phi) const {
    sd.derivative(phi, acc, 2);
    for (std::size_t j = 0; j < n; ++j) {
      acc[j] += phi[j];
      if (!options.linear) acc[j] -= ipow(phi[j], 2 * k + 1);
    }
  }
};

Evolver::Evolver(std::size_t N, double L, int k) : Evolver(N, L, k, Options{}) {}

Evolver::Evolver(std::size_t N, double L, int k, Options options)
    : impl_(std::make_unique<Impl>(N, L, k, options)) {
  if (k < 1) throw ParameterError("nonlinearity exponent k must be >= 1");
}

Evolver::~Evolver() = default;
Evolver::Evolver(Evolver&&) noexcept = default;
Evolver& Evolver::operator=(Evolver&&) noexcept = default;

double Evolver::dx() const noexcept {
  return impl_->L / static_cast<double>(impl_->n);
}

double Evolver::max_dt() const noexcept { return 0.5 * dx(); }

void Evolver::step(FieldState& s, double dt) const {
  const Impl& m = *impl_;
  if (s.phi.size() != m.n || s.psi.size() != m.n) {
    throw ParameterError("field state does not match the evolver grid");
  }
  if (!(std::abs(dt) <= max_dt() * (1.0 + 1e-12))) {
    throw ParameterError("time step " + std::to_string(dt) +
                         " exceeds 0.5 dx = " + std::to_string(max_dt()));
  }
  const double half = 0.5 * dt;
  m.acceleration(s.phi);
  for (std::size_t j = 0; j < m.n; ++j) s.psi[j] += half * m.acc[j];
  for (std::size_t j = 0; j < m.n; ++j) s.phi[j] += dt * s.psi[j];
  m.acceleration(s.phi);
  for (std::size_t j = 0; j < m.n; ++j) s.psi[j] += half * m.acc[j];
  if (m.options.project_odd) {
    make_odd(s.phi);
    make_odd(s.psi);
  }
  s.t += dt;

  double peak = 0.0;
  for (double v : s.phi) peak = std::max(peak, std::abs(v));
  if (!(peak <= m.options.blow_up)) {
    throw BlowUpError("field exceeded " + std::to_string(m.options.blow_up) +
                      " at t = " + std::to_string(s.t));
  }
}

std::pair<double, double> Evolver::conserved(const FieldState& s) const {
  const Impl& m = *impl_;
  const std::vector<double> phix = m.sd.derivative(s.phi, 1);
  std::vector<double> e(m.n);
  std::vector<double> f(m.n);
  for (std::size_t j = 0; j < m.n; ++j) {
    const double p = s.phi[j];
    e[j] = 0.5 * (phix[j] * phix[j] + s.psi[j] * s.psi[j] - p * p +
                  ipow(p, 2 * m.k + 2) / (m.k + 1.0));
    f[j] = phix[j] * s.psi[j];
  }
  return {periodic_integral(e, m.L), periodic_integral(f, m.L)};
}

FieldState step(const FieldState& state, double dt) {
  FieldState out = state;
  Evolver(state.phi.size(), state.L, state.k).step(out, dt);
  return out;
}

std::pair<double, double> conserved(const FieldState& state) {
  return Evolver(state.phi.size(), state.L, state.k).conserved(state);
}

FieldState seed_traveling(const PeriodicWave& wave, double c, double epsilon,
                          PerturbationMode mode, std::uint64_t seed) {
  if (!(std::abs(c) < 1.0)) throw ParameterError("wave speed must satisfy |c| < 1");
  if (!(epsilon >= 0.0)) throw ParameterError("epsilon must be >= 0");
  const double omega = wave.params().omega;
  if (std::abs(c * c - (1.0 - omega)) > 1e-12) {
    throw ParameterError("speed c = " + std::to_string(c) +
                         " does not satisfy c^2 = 1 - omega");
  }
  if (mode == PerturbationMode::kOdd && c != 0.0) {
    throw ParityError("odd perturbations need c = 0, got c = " +
                      std::to_string(c));
  }
  const std::size_t n = wave.size();
  FieldState s;
  s.L = wave.period();
  s.k = wave.params().k;
  s.phi.assign(wave.h().begin(), wave.h().end());
  s.psi.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.psi[j] = c * wave.hprime()[j];
  if (epsilon == 0.0) return s;

  std::vector<double> u;
  std::vector<double> v;
  if (mode == PerturbationMode::kGeneric) {
    const std::size_t m = std::min(n, kSeedOperatorSize);
    const SpectrumReport r = kg_block_spectrum(wave, c, m);
    const std::vector<double>& ev = r.eigenvectors.front();
    u = fourier_resample(std::span<const double>(ev.data(), m), n);
    v = fourier_resample(std::span<const double>(ev.data() + m, m), n);
  } else {
    std::mt19937_64 rng(seed);
    u = random_odd_function(wave, rng);
    v = random_odd_function(wave, rng);
    make_odd(u);
    make_odd(v);
  }
  const double scale = epsilon / std::sqrt(x_norm_squared(wave, u, v));
  for (std::size_t j = 0; j < n; ++j) {
    s.phi[j] += scale * u[j];
    s.psi[j] += scale * v[j];
  }
  if (mode == PerturbationMode::kOdd) {
    make_odd(s.phi);
    make_odd(s.psi);
  }
  return s;
}

double orbit_distance(const FieldState& state, const PeriodicWave& wave,
                      double c) {
  const std::size_t n = wave.size();
  if (state.phi.size() != n || state.psi.size() != n) {
    throw ParameterError("orbit distance: state and wave grids differ");
  }
  const double L = wave.period();
  const SpectralDerivative sd(n, L);
  const std::vector<double> phix = sd.derivative(state.phi, 1);
  std::vector<double> cp(n);
  for (std::size_t j = 0; j < n; ++j) cp[j] = c * wave.hprime()[j];

  // Cross-correlation sum_j a_j b_{j+s} of the three X-norm components.
  const std::span<const double> a[3] = {state.phi, phix, state.psi};
  const std::span<const double> b[3] = {wave.h(), wave.hprime(), cp};
  std::vector<std::complex<double>> acc(n / 2 + 1, 0.0);
  for (int i = 0; i < 3; ++i) {
    const auto A = sd.half_spectrum(a[i]);
    const auto Bh = sd.half_spectrum(b[i]);
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += std::conj(A[m]) * Bh[m];
  }
  std::vector<double> corr(n);
  sd.synthesize(acc, corr);  // already carries 1/N from half_spectrum

  auto direct = [&](double r) {
    const std::vector<double> h = translate(sd, wave.h(), r);
    const std::vector<double> hp = translate(sd, wave.hprime(), r);
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double du = state.phi[j] - h[j];
      const double dux = phix[j] - hp[j];
      const double dv = state.psi[j] - c * hp[j];
      f[j] = du * du + dux * dux + dv * dv;
    }
    return periodic_integral(f, L);
  };

  // Maximizing the correlation minimizes the distance. The best grid shift
  // seeds Newton on the trigonometric interpolant of the correlation.
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    if (corr[s] > corr[best]) best = s;
  }
  const double dx = L / static_cast<double>(n);
  auto slope_curvature = [&](double r) {
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t m = 1; m < acc.size(); ++m) {
      const double weight = 2 * m == n ? 1.0 : 2.0;
      const double q = sd.wavenumber(m);
      const std::complex<double> z = acc[m] * std::polar(1.0, q * r);
      d1 -= weight * q * z.imag();
      d2 -= weight * q * q * z.real();
    }
    return std::pair{d1, d2};
  };
  double r = static_cast<double>(best) * dx;
  for (int it = 0; it < 8; ++it) {
    const auto [d1, d2] = slope_curvature(r);
    if (!(d2 < 0.0)) break;
    const double step = std::clamp(-d1 / d2, -dx, dx);
    r += step;
    if (std::abs(step) < 1e-15 * L) break;
  }
  const double d2 = std::min(direct(static_cast<double>(best) * dx), direct(r));
  return std::sqrt(std::max(d2, 0.0));
}

double even_part(const FieldState& state) {
  double worst = 0.0;
  for (const auto* f : {&state.phi, &state.psi}) {
    const std::size_t n = f->size();
    worst = std::max(worst, std::abs((*f)[0]));
    for (std::size_t j = 1; j < n; ++j) {
      worst = std::max(worst, std::abs(0.5 * ((*f)[j] + (*f)[n - j])));
    }
  }
  return worst;
}

OrbitTrace run_experiment(const PeriodicWave& wave,
                          const ExperimentConfig& config) {
  if (!(config.T > 0.0) || !(config.sample_dt > 0.0)) {
    throw ParameterError("experiment needs T > 0 and sample_dt > 0");
  }
  if (!(config.dt_factor > 0.0 && config.dt_factor <= 0.5)) {
    throw ParameterError("dt_factor must lie in (0, 0.5]");
  }
  FieldState s = seed_traveling(wave, config.c, config.epsilon, config.mode,
                                config.seed);
  Evolver::Options opt;
  opt.project_odd = config.mode == PerturbationMode::kOdd;
  const Evolver ev(wave.size(), wave.period(), wave.params().k, opt);

  OrbitTrace trace;
  trace.steps = static_cast<std::size_t>(
      std::ceil(config.T / (config.dt_factor * ev.dx())));
  trace.dt = config.T / static_cast<double>(trace.steps);
  const auto every = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(config.sample_dt / trace.dt)));

  auto record = [&] {
    const auto [E, F] = ev.conserved(s);
    trace.times.push_back(s.t);
    trace.distances.push_back(orbit_distance(s, wave, config.c));
    trace.energies.push_back(E);
    trace.momenta.push_back(F);
    if (opt.project_odd) {
      trace.max_parity_defect = std::max(trace.max_parity_defect, even_part(s));
    }
  };

  record();
  try {
    for (std::size_t i = 1; i <= trace.steps; ++i) {
      ev.step(s, trace.dt);
      if (i % every == 0 || i == trace.steps) record();
    }
  } catch (const BlowUpError& e) {
    trace.blew_up = true;
    trace.termination = e.what();
    spdlog::info("evolution stopped: {}", e.what());
  }
  return trace;
}

}  // namespace kgwave
