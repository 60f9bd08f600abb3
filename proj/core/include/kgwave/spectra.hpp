#pragma once

// Periodic spectra of the Hill operator
//   L y = -omega y'' - y + (2k+1) h^{2k} y
// and of the Klein-Gordon block
//   L_KG = [[-d^2 - 1 + (2k+1) h^{2k},  c d], [-c d,  1]]
// by Fourier collocation (sine Galerkin for the odd sector).

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "kgwave/waves.hpp"

namespace kgwave {

enum class OperatorKind { kHill, kKgBlock, kHillOdd, kKgBlockOdd };

std::string_view to_string(OperatorKind kind);

struct SpectrumReport {
  OperatorKind kind = OperatorKind::kHill;
  int k = 1;
  double omega = 0.0;
  double B = 0.0;
  double c = 0.0;
  std::size_t N = 0;
  std::vector<double> eigenvalues;  // ascending
  // Eigenvectors of the lowest few eigenvalues, in the operator's own basis
  // (grid values; sine coefficients for the odd kinds).
  std::vector<std::vector<double>> eigenvectors;
  int n_negative = 0;
  int n_zero = 0;
  double tol_zero = 0.0;
  // |<v, a>| / (|v| |a|) for the eigenvector v closest to 0 and the analytic
  // zero mode a; 0 for the odd kinds, which have no analytic zero mode.
  double zero_eigenvector_match = 0.0;
};

// Number of eigenvectors kept in a SpectrumReport.
inline constexpr std::size_t kKeptEigenvectors = 4;

// tol_zero = 1e-6 omega (2 pi / L)^2.
double zero_tolerance(double omega, double L);

// Assembled matrices on the N-point grid (h resampled from the wave grid).
// Throw ResolutionError if the wave is not resolved on N points.
Eigen::MatrixXd hill_matrix(const PeriodicWave& wave, std::size_t N);
Eigen::MatrixXd kg_block_matrix(const PeriodicWave& wave, double c,
                                std::size_t N);
// Sine-Galerkin matrix on sin(2 pi n x / L), n = 1..N/2 - 1, in the
// orthonormal basis.
Eigen::MatrixXd hill_odd_matrix(const PeriodicWave& wave, std::size_t N);

SpectrumReport hill_spectrum(const PeriodicWave& wave, std::size_t N);
// Requires c^2 = 1 - omega to 1e-12.
SpectrumReport kg_block_spectrum(const PeriodicWave& wave, double c,
                                 std::size_t N);
SpectrumReport odd_spectrum(const PeriodicWave& wave, std::size_t N);
// Only defined for c = 0, where the block keeps the odd sector invariant;
// throws ParityError otherwise.
SpectrumReport kg_block_odd(const PeriodicWave& wave, double c, std::size_t N);

SpectrumReport spectrum(OperatorKind kind, const PeriodicWave& wave, double c,
                        std::size_t N);

// min_n |omega (2 pi n / L)^2 - 1|, the distance of the zero-amplitude
// operator from a degenerate kernel.
double linear_gap(double omega, double L);

// <L_KG (u, v), (u, v)> written as Q(u) + |c u' - v|^2 with
// Q(u) = int omega u'^2 - u^2 + (2k+1) h^{2k} u^2; u, v on the wave grid.
double kg_quadratic_form(const PeriodicWave& wave, double c,
                         std::span<const double> u, std::span<const double> v);

// |u|_{H^1}^2 + |v|_{L^2}^2 on the wave grid.
double x_norm_squared(const PeriodicWave& wave, std::span<const double> u,
                      std::span<const double> v);

struct CoercivityReport {
  double sigma = 0.0;   // smallest odd-sector eigenvalue
  double M_k = 0.0;     // (2k+1) max |h|^{2k}
  // The a, b chain with a = 1 is only available when omega < sigma.
  bool chain_feasible = false;
  double a = 0.0;
  double b = 0.0;
  // Convex combination of Q >= sigma |u|^2 and Q >= omega |u'|^2 - |u|^2.
  double gamma_interpolation = 0.0;
  double gamma = 0.0;  // chain value when feasible, else the interpolation
  double gamma_tilde = 0.0;
  int samples = 0;
  int violations = 0;
  double min_ratio = 0.0;  // min of form / X-norm^2 over the samples
};

// Coercivity constants of the c = 0 block on odd pairs, checked on `samples`
// random smooth odd pairs drawn from `seed`.
CoercivityReport coercivity_constants(const PeriodicWave& wave,
                                      std::uint64_t seed = 0, int samples = 50,
                                      std::size_t N = 256);

// Smooth random odd function on the wave grid: sum_{n<=16} a_n sin(2 pi n x/L)
// with a_n ~ N(0, 1) / n^2.
std::vector<double> random_odd_function(const PeriodicWave& wave,
                                        std::mt19937_64& rng);

}  // namespace kgwave
