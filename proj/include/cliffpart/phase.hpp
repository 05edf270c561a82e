#pragma once

#include <complex>
#include <vector>

namespace cliffpart {

/// Exact scalar phase attached to algebra monomials.
///
/// Every scalar that appears while multiplying generator monomials of the
/// order-n algebra is either zero or a root of unity.  For odd n all such
/// scalars are powers of omega = exp(2*pi*i/n); for even n half-integer
/// powers appear as well, so the natural group is generated by
/// xi = exp(pi*i/n) with xi^2 = omega.  PhaseExponent stores the phase as an
/// integer exponent modulo L, where
///
///   L = n   (n odd)   with base omega,
///   L = 2n  (n even)  with base xi,
///
/// so products, powers and inverses are integer arithmetic and never lose
/// precision.  A separate zero state absorbs multiplication, which lets
/// traceless monomials be represented uniformly.
class PhaseExponent {
public:
  /// Default is the identity phase of order 2.  Containers and aggregates
  /// need this; real values always come from the factories below, and mixing
  /// a stale default into another order throws on the first multiplication.
  PhaseExponent() : PhaseExponent(2, 4, 0, false) {}

  /// Multiplicative identity for order n.
  static PhaseExponent one(int n) { return root_power(n, 0); }

  /// The absorbing zero phase for order n.
  static PhaseExponent zero(int n);

  /// omega^k, omega = exp(2*pi*i/n).  Valid for every n >= 2.
  static PhaseExponent omega_power(int n, long long k);

  /// xi^k, xi = exp(pi*i/n).  Only meaningful for even n; throws otherwise.
  static PhaseExponent xi_power(int n, long long k);

  /// base^k where base = exp(2*pi*i/L) is the finest phase for this n.
  static PhaseExponent root_power(int n, long long k);

  bool is_zero() const { return zero_; }

  /// Algebra order n this phase belongs to.
  int order() const { return n_; }

  /// Size L of the phase group (n for odd n, 2n for even n).
  int modulus() const { return modulus_; }

  /// Exponent in [0, L) with respect to the finest base.  Throws on zero.
  int exponent() const;

  /// True when the phase is a power of omega (always for odd n; for even n
  /// this requires an even exponent in the xi basis).  Zero reports false.
  bool is_omega_power() const;

  /// Exponent k with value omega^k.  Throws when !is_omega_power().
  int omega_exponent() const;

  PhaseExponent operator*(const PhaseExponent& rhs) const;
  PhaseExponent pow(long long m) const;
  PhaseExponent inverse() const;

  bool operator==(const PhaseExponent& rhs) const {
    return n_ == rhs.n_ && zero_ == rhs.zero_ && (zero_ || exp_ == rhs.exp_);
  }
  bool operator!=(const PhaseExponent& rhs) const { return !(*this == rhs); }

  /// Numeric value, exact up to one std::polar evaluation.
  std::complex<double> value() const;

private:
  PhaseExponent(int n, int modulus, int exp, bool zero)
      : n_(n), modulus_(modulus), exp_(exp), zero_(zero) {}

  int n_;
  int modulus_;
  int exp_;
  bool zero_;
};

/// omega = exp(2*pi*i/n) as a plain complex number.
std::complex<double> omega(int n);

/// The order-n normalizing phase rho used to turn boundary monomials into
/// exact n-th roots of the identity:
///   rho = omega^{(n^2-1)/2}  for odd n,
///   rho = xi^{n^2-1}         for even n.
PhaseExponent rho(int n);

/// Parity phase rho2 relating the second generator flavour to the first:
/// rho2 = 1 for odd n and xi^{-1} for even n.
PhaseExponent rho2(int n);

/// Generalized hyperbolic components of the exponential.
///
/// Returns f_0..f_{n-1} with f_i(x) = sum_{k>=0} x^{nk+i} / (nk+i)!, so that
/// sum_i f_i(x) = exp(x) and f_i(omega * x) = omega^i * f_i(x).  For n = 2
/// these are cosh and sinh.  Evaluated in closed form as
/// f_i(x) = (1/n) * sum_k omega^{-k i} exp(omega^k x), which is stable for
/// the moderate |x| used here (couplings of order one).
std::vector<std::complex<double>> gen_hyperbolic(int n, std::complex<double> x);

}  // namespace cliffpart
