#include "cliffpart/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cliffpart {

namespace {

void check_order(int n) {
  if (n < 2) throw std::invalid_argument("phase order must be at least 2");
}

int mod(long long k, int m) {
  long long r = k % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

}  // namespace

PhaseExponent PhaseExponent::zero(int n) {
  check_order(n);
  return PhaseExponent(n, n % 2 == 0 ? 2 * n : n, 0, true);
}

PhaseExponent PhaseExponent::root_power(int n, long long k) {
  check_order(n);
  int modulus = n % 2 == 0 ? 2 * n : n;
  return PhaseExponent(n, modulus, mod(k, modulus), false);
}

PhaseExponent PhaseExponent::omega_power(int n, long long k) {
  check_order(n);
  return n % 2 == 0 ? root_power(n, 2 * k) : root_power(n, k);
}

PhaseExponent PhaseExponent::xi_power(int n, long long k) {
  check_order(n);
  if (n % 2 != 0)
    throw std::invalid_argument("xi powers only exist for even order");
  return root_power(n, k);
}

int PhaseExponent::exponent() const {
  if (zero_) throw std::logic_error("zero phase has no exponent");
  return exp_;
}

bool PhaseExponent::is_omega_power() const {
  if (zero_) return false;
  return n_ % 2 == 1 || exp_ % 2 == 0;
}

int PhaseExponent::omega_exponent() const {
  if (!is_omega_power())
    throw std::logic_error("phase is not a power of omega");
  return n_ % 2 == 1 ? exp_ : exp_ / 2;
}

PhaseExponent PhaseExponent::operator*(const PhaseExponent& rhs) const {
  if (n_ != rhs.n_)
    throw std::invalid_argument("cannot multiply phases of different order");
  if (zero_ || rhs.zero_) return zero(n_);
  return PhaseExponent(n_, modulus_, mod(exp_ + rhs.exp_, modulus_), false);
}

PhaseExponent PhaseExponent::pow(long long m) const {
  if (zero_) return m == 0 ? one(n_) : zero(n_);
  return PhaseExponent(n_, modulus_, mod(static_cast<long long>(exp_) * m, modulus_),
                       false);
}

PhaseExponent PhaseExponent::inverse() const {
  if (zero_) throw std::logic_error("zero phase has no inverse");
  return pow(-1);
}

std::complex<double> PhaseExponent::value() const {
  if (zero_) return {0.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * exp_ / modulus_);
}

std::complex<double> omega(int n) {
  check_order(n);
  return std::polar(1.0, 2.0 * std::numbers::pi / n);
}

PhaseExponent rho(int n) {
  check_order(n);
  long long s = static_cast<long long>(n) * n - 1;
  return n % 2 == 1 ? PhaseExponent::omega_power(n, s / 2)
                    : PhaseExponent::xi_power(n, s);
}

PhaseExponent rho2(int n) {
  check_order(n);
  return n % 2 == 1 ? PhaseExponent::one(n) : PhaseExponent::xi_power(n, -1);
}

std::vector<std::complex<double>> gen_hyperbolic(int n, std::complex<double> x) {
  check_order(n);
  std::vector<std::complex<double>> e(n);
  const std::complex<double> w = omega(n);
  std::complex<double> wk = 1.0;
  for (int k = 0; k < n; ++k) {
    e[k] = std::exp(wk * x);
    wk *= w;
  }
  std::vector<std::complex<double>> f(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> acc = 0.0;
    for (int k = 0; k < n; ++k) {
      // omega^{-k i} without accumulating rounding across the double loop
      long long r = (static_cast<long long>(k) * i) % n;
      acc += std::polar(1.0, -2.0 * std::numbers::pi * r / n) * e[k];
    }
    f[i] = acc / static_cast<double>(n);
  }
  return f;
}

}  // namespace cliffpart
