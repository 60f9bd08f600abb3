#include "kgwave/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "kgwave/errors.hpp"
#include "kgwave/planar.hpp"
#include "kgwave/spectral.hpp"

namespace kgwave {
namespace {

using planar::ipow;

constexpr double kResolutionGate = 1e-10;
constexpr double kSymmetryGate = 1e-12;
constexpr double kSpeedGate = 1e-12;

void require_operator_size(std::size_t N) {
  if (N < 16 || N % 2 != 0) {
    throw ParameterError("operator size must be even and >= 16, got " +
                         std::to_string(N));
  }
}

// h on the N-point grid, after checking that both grids resolve it.
std::vector<double> resolved_profile(const PeriodicWave& wave, std::size_t N) {
  require_operator_size(N);
  const SpectralDerivative native(wave.size(), wave.period());
  const double tail = spectral_tail(native, wave.h());
  if (!(tail < kResolutionGate)) {
    throw ResolutionError("wave not resolved on its own grid: spectral tail " +
                          std::to_string(tail));
  }
  std::vector<double> h = fourier_resample(wave.h(), N);
  if (N != wave.size()) {
    const SpectralDerivative target(N, wave.period());
    const double t = spectral_tail(target, h);
    if (!(t < kResolutionGate)) {
      throw ResolutionError("wave not resolved on " + std::to_string(N) +
                            " points: spectral tail " + std::to_string(t));
    }
  }
  return h;
}

void check_symmetric(const Eigen::MatrixXd& M) {
  const double scale = M.cwiseAbs().maxCoeff();
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryGate * std::max(scale, 1.0)) {
    throw ResolutionError("assembled operator is not symmetric: " +
                          std::to_string(asym));
  }
}

void check_speed(const PeriodicWave& wave, double c) {
  const double omega = wave.params().omega;
  if (std::abs(c * c - (1.0 - omega)) > kSpeedGate) {
    throw ParameterError("speed c = " + std::to_string(c) +
                         " does not satisfy c^2 = 1 - omega for omega = " +
                         std::to_string(omega));
  }
}

double match(const Eigen::VectorXd& v, const Eigen::VectorXd& a) {
  const double nv = v.norm();
  const double na = a.norm();
  if (nv == 0.0 || na == 0.0) return 0.0;
  return std::abs(v.dot(a)) / (nv * na);
}

SpectrumReport solve(OperatorKind kind, const PeriodicWave& wave, double c,
                     std::size_t N, const Eigen::MatrixXd& M) {
  check_symmetric(M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    throw ResolutionError("symmetric eigensolver did not converge");
  }
  SpectrumReport r;
  r.kind = kind;
  r.k = wave.params().k;
  r.omega = wave.params().omega;
  r.B = wave.params().B;
  r.c = c;
  r.N = N;
  r.tol_zero = zero_tolerance(r.omega, wave.period());
  const Eigen::VectorXd& ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  for (double lam : r.eigenvalues) {
    if (lam < -r.tol_zero) ++r.n_negative;
    else if (lam <= r.tol_zero) ++r.n_zero;
  }
  const auto keep = std::min<Eigen::Index>(kKeptEigenvectors, ev.size());
  for (Eigen::Index j = 0; j < keep; ++j) {
    const Eigen::VectorXd col = es.eigenvectors().col(j);
    r.eigenvectors.emplace_back(col.data(), col.data() + col.size());
  }
  return r;
}

Eigen::Index closest_to_zero(const std::vector<double>& ev) {
  Eigen::Index best = 0;
  for (std::size_t j = 1; j < ev.size(); ++j) {
    if (std::abs(ev[j]) < std::abs(ev[static_cast<std::size_t>(best)])) {
      best = static_cast<Eigen::Index>(j);
    }
  }
  return best;
}

Eigen::VectorXd zero_mode_vector(const SpectrumReport& r,
                                 const Eigen::MatrixXd& M) {
  // Recomputing one eigenvector is cheaper than keeping them all.
  const Eigen::Index j = closest_to_zero(r.eigenvalues);
  if (j < static_cast<Eigen::Index>(r.eigenvectors.size())) {
    const auto& v = r.eigenvectors[static_cast<std::size_t>(j)];
    return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                             static_cast<Eigen::Index>(v.size()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  return es.eigenvectors().col(j);
}

// Cosine coefficients vhat_j of V = (2k+1) h^{2k}: V = vhat_0 + 2 sum vhat_j cos.
std::vector<double> potential_cosine_coefficients(const PeriodicWave& wave) {
  const int k = wave.params().k;
  std::vector<double> V(wave.size());
  const auto h = wave.h();
  for (std::size_t j = 0; j < V.size(); ++j) {
    V[j] = (2.0 * k + 1.0) * ipow(h[j], 2 * k);
  }
  const SpectralDerivative sd(wave.size(), wave.period());
  const auto c = sd.half_spectrum(V);
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j].real();
  return out;
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kHill:
      return "hill";
    case OperatorKind::kKgBlock:
      return "kg_block";
    case OperatorKind::kHillOdd:
      return "hill_odd";
    case OperatorKind::kKgBlockOdd:
      return "kg_block_odd";
  }
  return "unknown";
}

double zero_tolerance(double omega, double L) {
  const double q = 2.0 * std::numbers::pi / L;
  return 1e-6 * omega * q * q;
}

double linear_gap(double omega, double L) {
  const double q = 2.0 * std::numbers::pi / L;
  // The minimum over n sits at one of the two integers around 1/(q sqrt(omega)).
  const double n_star = 1.0 / (q * std::sqrt(omega));
  double gap = 1.0;  // n = 0
  for (double n : {std::floor(n_star), std::ceil(n_star)}) {
    if (n < 1.0) continue;
    gap = std::min(gap, std::abs(omega * q * q * n * n - 1.0));
  }
  return gap;
}

Eigen::MatrixXd hill_matrix(const PeriodicWave& wave, std::size_t N) {
  const std::vector<double> h = resolved_profile(wave, N);
  const int k = wave.params().k;
  Eigen::MatrixXd M = -wave.params().omega * fourier_d2_matrix(N, wave.period());
  for (std::size_t j = 0; j < N; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    M(i, i) += -1.0 + (2.0 * k + 1.0) * ipow(h[j], 2 * k);
  }
  return M;
}

Eigen::MatrixXd kg_block_matrix(const PeriodicWave& wave, double c,
                                std::size_t N) {
  check_speed(wave, c);
  const std::vector<double> h = resolved_profile(wave, N);
  const int k = wave.params().k;
  const auto n = static_cast<Eigen::Index>(N);
  const Eigen::MatrixXd D = fourier_d1_matrix(N, wave.period());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // -D2 rather than -D*D: the product would zero the Nyquist mode and plant a
  // spurious eigenvalue -1 in the first block.
  M.topLeftCorner(n, n) = -fourier_d2_matrix(N, wave.period());
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) += -1.0 + (2.0 * k + 1.0) * ipow(h[static_cast<std::size_t>(i)], 2 * k);
  }
  M.topRightCorner(n, n) = c * D;
  M.bottomLeftCorner(n, n) = -c * D;
  M.bottomRightCorner(n, n).diagonal().setOnes();
  return M;
}

Eigen::MatrixXd hill_odd_matrix(const PeriodicWave& wave, std::size_t N) {
  require_operator_size(N);
  resolved_profile(wave, wave.size());
  const std::vector<double> vhat = potential_cosine_coefficients(wave);
  auto coef = [&](std::size_t j) { return j < vhat.size() ? vhat[j] : 0.0; };
  const auto m = static_cast<Eigen::Index>(N / 2 - 1);
  const double q = 2.0 * std::numbers::pi / wave.period();
  const double omega = wave.params().omega;
  Eigen::MatrixXd M(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto a = static_cast<std::size_t>(i + 1);
      const auto b = static_cast<std::size_t>(j + 1);
      M(i, j) = coef(a > b ? a - b : b - a) - coef(a + b);
    }
    const double kn = q * static_cast<double>(i + 1);
    M(i, i) += omega * kn * kn - 1.0;
  }
  return M;
}

SpectrumReport hill_spectrum(const PeriodicWave& wave, std::size_t N) {
  const Eigen::MatrixXd M = hill_matrix(wave, N);
  SpectrumReport r = solve(OperatorKind::kHill, wave, 0.0, N, M);
  const std::vector<double> hp = fourier_resample(wave.hprime(), N);
  const Eigen::Map<const Eigen::VectorXd> a(hp.data(),
                                            static_cast<Eigen::Index>(N));
  r.zero_eigenvector_match = match(zero_mode_vector(r, M), a);
  return r;
}

SpectrumReport kg_block_spectrum(const PeriodicWave& wave, double c,
                                 std::size_t N) {
  const Eigen::MatrixXd M = kg_block_matrix(wave, c, N);
  SpectrumReport r = solve(OperatorKind::kKgBlock, wave, c, N, M);
  const std::vector<double> hp = fourier_resample(wave.hprime(), N);
  const std::vector<double> h2 = fourier_resample(wave.hsecond(), N);
  const auto n = static_cast<Eigen::Index>(N);
  Eigen::VectorXd a(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i) = hp[static_cast<std::size_t>(i)];
    a(n + i) = c * h2[static_cast<std::size_t>(i)];
  }
  r.zero_eigenvector_match = match(zero_mode_vector(r, M), a);
  return r;
}

SpectrumReport odd_spectrum(const PeriodicWave& wave, std::size_t N) {
  return solve(OperatorKind::kHillOdd, wave, 0.0, N, hill_odd_matrix(wave, N));
}

SpectrumReport kg_block_odd(const PeriodicWave& wave, double c, std::size_t N) {
  check_speed(wave, c);
  if (c != 0.0) {
    throw ParityError("the odd sector is invariant under L_KG only for c = 0");
  }
  const Eigen::MatrixXd H = hill_odd_matrix(wave, N);
  const Eigen::Index m = H.rows();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  M.topLeftCorner(m, m) = H;
  M.bottomRightCorner(m, m).diagonal().setOnes();
  return solve(OperatorKind::kKgBlockOdd, wave, c, N, M);
}

SpectrumReport spectrum(OperatorKind kind, const PeriodicWave& wave, double c,
                        std::size_t N) {
  switch (kind) {
    case OperatorKind::kHill:
      return hill_spectrum(wave, N);
    case OperatorKind::kKgBlock:
      return kg_block_spectrum(wave, c, N);
    case OperatorKind::kHillOdd:
      return odd_spectrum(wave, N);
    case OperatorKind::kKgBlockOdd:
      return kg_block_odd(wave, c, N);
  }
  throw ParameterError("unknown operator kind");
}

double kg_quadratic_form(const PeriodicWave& wave, double c,
                         std::span<const double> u, std::span<const double> v) {
  const std::size_t n = wave.size();
  if (u.size() != n || v.size() != n) {
    throw ParameterError("quadratic form: vectors must live on the wave grid");
  }
  const SpectralDerivative sd(n, wave.period());
  const std::vector<double> ux = sd.derivative(u, 1);
  const int k = wave.params().k;
  const double omega = wave.params().omega;
  const auto h = wave.h();
  std::vector<double> q(n);
  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double V = (2.0 * k + 1.0) * ipow(h[j], 2 * k);
    q[j] = omega * ux[j] * ux[j] - u[j] * u[j] + V * u[j] * u[j];
    const double d = c * ux[j] - v[j];
    r[j] = d * d;
  }
  return periodic_integral(q, wave.period()) + periodic_integral(r, wave.period());
}

double x_norm_squared(const PeriodicWave& wave, std::span<const double> u,
                      std::span<const double> v) {
  const std::size_t n = wave.size();
  if (u.size() != n || v.size() != n) {
    throw ParameterError("X norm: vectors must live on the wave grid");
  }
  const SpectralDerivative sd(n, wave.period());
  const std::vector<double> ux = sd.derivative(u, 1);
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    f[j] = u[j] * u[j] + ux[j] * ux[j] + v[j] * v[j];
  }
  return periodic_integral(f, wave.period());
}

std::vector<double> random_odd_function(const PeriodicWave& wave,
                                        std::mt19937_64& rng) {
  constexpr int kModes = 16;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> amp(kModes);
  for (int m = 0; m < kModes; ++m) {
    amp[static_cast<std::size_t>(m)] = gauss(rng) / ((m + 1.0) * (m + 1.0));
  }
  const double q = 2.0 * std::numbers::pi / wave.period();
  std::vector<double> f(wave.size(), 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = wave.x(j);
    for (int m = 0; m < kModes; ++m) {
      f[j] += amp[static_cast<std::size_t>(m)] * std::sin(q * (m + 1.0) * x);
    }
  }
  return f;
}

CoercivityReport coercivity_constants(const PeriodicWave& wave,
                                      std::uint64_t seed, int samples,
                                      std::size_t N) {
  const double omega = wave.params().omega;
  const auto c = speed_from_omega(omega);
  if (!c || *c > 1e-6) {
    throw ParameterError("coercivity constants need a c = 0 wave (omega = 1)");
  }
  CoercivityReport r;
  r.sigma = odd_spectrum(wave, N).eigenvalues.front();
  if (!(r.sigma > 0.0)) {
    throw NoSolutionError("odd-sector operator is not positive: sigma = " +
                          std::to_string(r.sigma));
  }
  const int k = wave.params().k;
  double hmax = 0.0;
  for (double v : wave.h()) hmax = std::max(hmax, std::abs(v));
  r.M_k = (2.0 * k + 1.0) * ipow(hmax, 2 * k);

  r.gamma_interpolation = omega * r.sigma / (omega + r.sigma + 1.0);
  r.chain_feasible = omega < r.sigma;
  if (r.chain_feasible) {
    r.a = 1.0;
    r.b = 2.0 * (1.0 + r.M_k) / (1.0 - omega / r.sigma);
    const double lower = r.b - r.a - r.b * omega / r.sigma - r.M_k;
    r.gamma = std::min(r.a, lower) / (r.a + r.b * omega / r.sigma);
  } else {
    r.gamma = r.gamma_interpolation;
  }
  r.gamma_tilde = std::min(r.gamma, 1.0);

  std::mt19937_64 rng(seed);
  r.samples = samples;
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const std::vector<double> u = random_odd_function(wave, rng);
    const std::vector<double> v = random_odd_function(wave, rng);
    const double ratio =
        kg_quadratic_form(wave, 0.0, u, v) / x_norm_squared(wave, u, v);
    r.min_ratio = std::min(r.min_ratio, ratio);
    if (ratio < r.gamma_tilde) ++r.violations;
  }
  return r;
}

}  // namespace kgwave
