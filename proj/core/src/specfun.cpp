#include "kgwave/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kgwave/errors.hpp"

namespace kgwave {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAgmSteps = 24;

std::string fmt_modulus(double kappa) { return std::to_string(kappa); }

// One AGM sweep from (1, kappa'), accumulating sum 2^{n-1} c_n^2 for E.
struct AgmResult {
  double mean;
  double weighted_c2;
};

AgmResult agm(double kappa, double kappa_c) {
  double a = 1.0;
  double b = kappa_c;
  double c = kappa;
  double weight = 0.5;
  double sum = weight * c * c;
  for (int n = 0; n < kMaxAgmSteps && std::abs(c) > kEps * a; ++n) {
    const double a_next = 0.5 * (a + b);
    // c_{n+1} = (a_n - b_n)/2 = c_n^2 / (4 a_{n+1}) avoids the cancellation.
    c = c * c / (4.0 * a_next);
    b = std::sqrt(a * b);
    a = a_next;
    weight *= 2.0;
    sum += weight * c * c;
  }
  return {a, sum};
}

}  // namespace

Modulus::Modulus(double kappa) : kappa_(kappa) {
  if (!(kappa >= 0.0 && kappa < 1.0)) {
    throw DomainError("modulus out of range: kappa = " + fmt_modulus(kappa) +
                      " (need 0 <= kappa < 1)");
  }
}

Modulus Modulus::from_parameter(double m) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw DomainError("elliptic parameter out of range: m = " +
                      fmt_modulus(m));
  }
  return Modulus(std::sqrt(m));
}

double Modulus::complementary() const noexcept {
  return std::sqrt((1.0 - kappa_) * (1.0 + kappa_));
}

CompleteIntegrals complete_KE(Modulus kappa) {
  if (kappa.value() > kMaxModulus) {
    throw DomainError("modulus out of range: kappa = " +
                      fmt_modulus(kappa.value()) +
                      " too close to 1 for K(kappa)");
  }
  const AgmResult r = agm(kappa.value(), kappa.complementary());
  const double K = std::numbers::pi / (2.0 * r.mean);
  return {K, K * (1.0 - r.weighted_c2)};
}

double complete_K(Modulus kappa) { return complete_KE(kappa).K; }

double complete_E(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw DomainError("modulus out of range: kappa = " + fmt_modulus(kappa) +
                      " (need 0 <= kappa <= 1 for E)");
  }
  if (kappa == 1.0) return 1.0;
  // No K cutoff here: K grows only logarithmically, so K * (1 - sum) stays
  // accurate to a digit or so all the way to kappa -> 1.
  const Modulus m(kappa);
  const AgmResult r = agm(kappa, m.complementary());
  return std::numbers::pi / (2.0 * r.mean) * (1.0 - r.weighted_c2);
}

EllipticTriple jacobi(double x, Modulus kappa) {
  if (!std::isfinite(x)) {
    throw DomainError("jacobi: argument must be finite");
  }
  const double k = kappa.value();
  if (k == 0.0) {
    return {std::sin(x), std::cos(x), 1.0};
  }
  const double kc = kappa.complementary();
  const double K = complete_K(kappa);

  // sn and cn have real period 4K; dn has 2K, so one reduction serves all.
  const double period = 4.0 * K;
  const double xr = x - period * std::nearbyint(x / period);

  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  c[0] = k;
  double b = kc;
  int n = 0;
  while (n < kMaxAgmSteps && std::abs(c[n]) > kEps * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = c[n] * c[n] / (4.0 * a[n + 1]);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  double phi = std::ldexp(a[n] * xr, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // 1 - k^2 sn^2 = cn^2 + k'^2 sn^2, free of cancellation as k -> 1.
  const double dn = std::sqrt(cn * cn + kc * kc * sn * sn);
  return {sn, cn, dn};
}

}  // namespace kgwave
