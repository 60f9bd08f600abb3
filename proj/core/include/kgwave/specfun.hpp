#pragma once

// Complete elliptic integrals and Jacobi elliptic functions.
//
// Every function here takes the modulus kappa, never the parameter m = kappa^2.
// Callers that hold m convert with Modulus::from_parameter().

namespace kgwave {

// Largest modulus accepted by anything that evaluates K(kappa); beyond this the
// logarithmic singularity at kappa = 1 swamps double precision.
inline constexpr double kMaxModulus = 1.0 - 1e-12;

// Elliptic modulus, 0 <= kappa < 1.
class Modulus {
 public:
  explicit Modulus(double kappa);

  static Modulus from_parameter(double m);

  [[nodiscard]] double value() const noexcept { return kappa_; }
  // m = kappa^2
  [[nodiscard]] double parameter() const noexcept { return kappa_ * kappa_; }
  // kappa' = sqrt(1 - kappa^2), computed without cancellation.
  [[nodiscard]] double complementary() const noexcept;

 private:
  double kappa_;
};

struct EllipticTriple {
  double sn;
  double cn;
  double dn;
};

// K(kappa) = int_0^{pi/2} dtheta / sqrt(1 - kappa^2 sin^2 theta), by the
// arithmetic-geometric mean. Throws DomainError for kappa > kMaxModulus.
double complete_K(Modulus kappa);

// E(kappa) = int_0^{pi/2} sqrt(1 - kappa^2 sin^2 theta) dtheta. Defined on the
// closed interval [0, 1] (E(1) = 1), hence the plain double argument.
double complete_E(double kappa);

// Both integrals from one AGM sweep.
struct CompleteIntegrals {
  double K;
  double E;
};
CompleteIntegrals complete_KE(Modulus kappa);

// sn, cn, dn by the descending Landen (AGM) recursion after reducing x modulo
// the real period 4K.
EllipticTriple jacobi(double x, Modulus kappa);

}  // namespace kgwave
