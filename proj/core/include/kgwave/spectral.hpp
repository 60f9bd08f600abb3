#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kgwave {

// Points x_j = j L / N, j = 0..N-1.
std::vector<double> uniform_grid(double L, std::size_t N);

// Trapezoid rule for a periodic integrand sampled on uniform_grid(L, N).
double periodic_integral(std::span<const double> f, double L);

// Fourier collocation differentiation matrices on [0, L) with N (even) points.
// First derivative is antisymmetric with zero Nyquist response; second
// derivative is symmetric and keeps the Nyquist mode at -(pi N / L)^2.
Eigen::MatrixXd fourier_d1_matrix(std::size_t N, double L);
Eigen::MatrixXd fourier_d2_matrix(std::size_t N, double L);

// FFT-based derivatives of periodic grid functions. Holds the FFT plan, so
// keep one per thread.
class SpectralDerivative {
 public:
  SpectralDerivative(std::size_t N, double L);
  ~SpectralDerivative();
  SpectralDerivative(SpectralDerivative&&) noexcept;
  SpectralDerivative& operator=(SpectralDerivative&&) noexcept;
  SpectralDerivative(const SpectralDerivative&) = delete;
  SpectralDerivative& operator=(const SpectralDerivative&) = delete;

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double length() const noexcept { return length_; }

  // d^order f / dx^order; order >= 0. Odd orders drop the Nyquist mode.
  void derivative(std::span<const double> f, std::span<double> out,
                  int order) const;
  [[nodiscard]] std::vector<double> derivative(std::span<const double> f,
                                               int order) const;

  // Complex coefficients c_n, n = 0..N/2, with f(x) = sum_n c_n e^{i 2 pi n x/L}
  // over the symmetric index range (negative n are conjugates).
  [[nodiscard]] std::vector<std::complex<double>> half_spectrum(
      std::span<const double> f) const;
  // Real grid function from a half spectrum.
  void synthesize(std::span<const std::complex<double>> coeffs,
                  std::span<double> out) const;

  // Angular wavenumber of index n (0 <= n <= N/2).
  [[nodiscard]] double wavenumber(std::size_t n) const noexcept;

 private:
  struct Impl;
  std::size_t n_;
  double length_;
  std::unique_ptr<Impl> impl_;
};

// Trigonometric interpolant of f (N samples on [0, L)) evaluated on M equispaced
// points. Truncates or zero-pads the spectrum.
std::vector<double> fourier_resample(std::span<const double> f, std::size_t M);

// max |c_n| over the top quarter of resolved modes divided by max |c_n|; the
// resolution gate for sampled waves.
double spectral_tail(const SpectralDerivative& sd, std::span<const double> f);

}  // namespace kgwave
