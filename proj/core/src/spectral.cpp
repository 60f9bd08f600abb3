#include "kgwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "kgwave/errors.hpp"

namespace kgwave {
namespace {

void require_even_grid(std::size_t N) {
  if (N < 4 || N % 2 != 0) {
    throw ParameterError("grid size must be even and >= 4, got " +
                         std::to_string(N));
  }
}

}  // namespace

std::vector<double> uniform_grid(double L, std::size_t N) {
  std::vector<double> x(N);
  for (std::size_t j = 0; j < N; ++j) {
    x[j] = L * static_cast<double>(j) / static_cast<double>(N);
  }
  return x;
}

double periodic_integral(std::span<const double> f, double L) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * L / static_cast<double>(f.size());
}

Eigen::MatrixXd fourier_d1_matrix(std::size_t N, double L) {
  require_even_grid(N);
  const auto n = static_cast<Eigen::Index>(N);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(N);
  const double scale = 2.0 * std::numbers::pi / L;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto d = i - j;
      const double sign = (d % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = 0.5 * sign / std::tan(0.5 * static_cast<double>(d) * step) *
                scale;
    }
  }
  return D;
}

Eigen::MatrixXd fourier_d2_matrix(std::size_t N, double L) {
  require_even_grid(N);
  const auto n = static_cast<Eigen::Index>(N);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(N);
  const double scale = std::pow(2.0 * std::numbers::pi / L, 2);
  const double diag =
      -std::numbers::pi * std::numbers::pi / (3.0 * step * step) - 1.0 / 6.0;
  Eigen::MatrixXd D2(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        D2(i, j) = diag * scale;
        continue;
      }
      const auto d = i - j;
      const double sign = (d % 2 == 0) ? 1.0 : -1.0;
      const double s = std::sin(0.5 * static_cast<double>(d) * step);
      D2(i, j) = -0.5 * sign / (s * s) * scale;
    }
  }
  return D2;
}

struct SpectralDerivative::Impl {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  Impl() { fft.SetFlag(Eigen::FFT<double>::HalfSpectrum); }
};

SpectralDerivative::SpectralDerivative(std::size_t N, double L)
    : n_(N), length_(L), impl_(std::make_unique<Impl>()) {
  require_even_grid(N);
  if (!(L > 0.0)) throw ParameterError("period must be positive");
  impl_->spectrum.resize(N / 2 + 1);
}

SpectralDerivative::~SpectralDerivative() = default;
SpectralDerivative::SpectralDerivative(SpectralDerivative&&) noexcept = default;
SpectralDerivative& SpectralDerivative::operator=(
    SpectralDerivative&&) noexcept = default;

double SpectralDerivative::wavenumber(std::size_t n) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(n) / length_;
}

std::vector<std::complex<double>> SpectralDerivative::half_spectrum(
    std::span<const double> f) const {
  std::vector<std::complex<double>> c(n_ / 2 + 1);
  impl_->fft.fwd(c.data(), f.data(), static_cast<Eigen::Index>(n_));
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (auto& v : c) v *= inv_n;
  return c;
}

void SpectralDerivative::synthesize(
    std::span<const std::complex<double>> coeffs, std::span<double> out) const {
  auto& buf = impl_->spectrum;
  const double nn = static_cast<double>(n_);
  for (std::size_t m = 0; m <= n_ / 2; ++m) buf[m] = coeffs[m] * nn;
  impl_->fft.inv(out.data(), buf.data(), static_cast<Eigen::Index>(n_));
}

void SpectralDerivative::derivative(std::span<const double> f,
                                    std::span<double> out, int order) const {
  if (f.size() != n_ || out.size() != n_) {
    throw ParameterError("spectral derivative: size mismatch");
  }
  if (order < 0) throw ParameterError("derivative order must be >= 0");
  if (order == 0) {
    std::copy(f.begin(), f.end(), out.begin());
    return;
  }
  auto& buf = impl_->spectrum;
  impl_->fft.fwd(buf.data(), f.data(), static_cast<Eigen::Index>(n_));
  const std::size_t half = n_ / 2;
  // (i k)^order = i^order k^order
  static constexpr std::complex<double> kIPow[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const std::complex<double> phase = kIPow[order % 4];
  for (std::size_t m = 0; m <= half; ++m) {
    if (m == half && order % 2 != 0) {
      buf[m] = 0.0;
      continue;
    }
    buf[m] *= phase * std::pow(wavenumber(m), order);
  }
  impl_->fft.inv(out.data(), buf.data(), static_cast<Eigen::Index>(n_));
}

std::vector<double> SpectralDerivative::derivative(std::span<const double> f,
                                                   int order) const {
  std::vector<double> out(n_);
  derivative(f, out, order);
  return out;
}

std::vector<double> fourier_resample(std::span<const double> f,
                                     std::size_t M) {
  const std::size_t N = f.size();
  if (M == N) return {f.begin(), f.end()};
  const SpectralDerivative from(N, 1.0);
  const SpectralDerivative to(M, 1.0);
  const auto c = from.half_spectrum(f);
  std::vector<std::complex<double>> d(M / 2 + 1, 0.0);
  if (M < N) {
    for (std::size_t m = 0; m < M / 2; ++m) d[m] = c[m];
    // The old modes +-M/2 alias onto the new Nyquist point.
    d[M / 2] = 2.0 * c[M / 2].real();
  } else {
    for (std::size_t m = 0; m < N / 2; ++m) d[m] = c[m];
    d[N / 2] = 0.5 * c[N / 2].real();
  }
  std::vector<double> out(M);
  to.synthesize(d, out);
  return out;
}

double spectral_tail(const SpectralDerivative& sd, std::span<const double> f) {
  const auto c = sd.half_spectrum(f);
  double peak = 0.0;
  for (const auto& v : c) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  const std::size_t start = (3 * (c.size() - 1)) / 4;
  double tail = 0.0;
  for (std::size_t m = start; m < c.size(); ++m) {
    tail = std::max(tail, std::abs(c[m]));
  }
  return tail / peak;
}

}  // namespace kgwave
