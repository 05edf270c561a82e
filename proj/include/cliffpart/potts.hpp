#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cliffpart/gca.hpp"
#include "cliffpart/linalg.hpp"

namespace cliffpart {

/// Z_n spins on a p x q torus.  Rows (p of them) are coupled with strength b,
/// columns (q of them) with strength a; both couplings enter through
/// 2*cos(2*pi*d/n) per bond, d the spin-exponent difference.  q = 1 and
/// p = 1 wrap bonds onto the same pair twice (doubled bonds), p = 2 likewise
/// doubles the vertical bonds.
struct LatticeModel {
  int n = 2;
  int p = 1;
  int q = 1;
  double a = 0.0;
  double b = 0.0;
};

void validate(const LatticeModel& m);

struct SizeGuards {
  long long dense = 4096;         // max transfer dimension n^p
  long long brute = 1LL << 20;    // max state count n^{p q}
  long long multisum = 1LL << 24; // max index tuples n^{3 p q + 1}
  long long partitions = 2000000; // max trace expansion terms
};

/// Reads CLIFFPART_GUARD_BITS (if set) as a bit width for the brute and
/// multisum guards: both become 2^bits.  Other guards are unchanged.
SizeGuards guards_from_env(SizeGuards base = {});

struct PartitionResult {
  std::string method;
  std::complex<double> z{0.0, 0.0};
  long long terms = 0;  // states, matrix dimension or index tuples visited
};

/// Spin exponents, row-major: entry(i, k) = m[i*q + k], row i in [0,p),
/// column k in [0,q).
using SpinConfiguration = std::vector<std::uint8_t>;

/// -E/kT of one configuration: the weighted sum of 2 cos(2 pi d / n) over
/// horizontal (a) and vertical (b) bonds.
double reduced_energy(const LatticeModel& m, const SpinConfiguration& s);

/// Exact-enumeration partition function, summing exp(-E/kT) over all n^{pq}
/// states in extended precision.
PartitionResult brute_force_partition(const LatticeModel& m,
                                      const SizeGuards& g = {});

/// Dense transfer operators for one column step, together with the algebra
/// signature and the symbolic forms of the same operators.
struct TransferOperators {
  LatticeModel model;
  AlgebraSignature sig;
  Matrix A;                  // intra-column weights, kron power of W
  Matrix B;                  // inter-row diagonal weights
  Matrix M;                  // B * A, one column transfer step
  Matrix U;                  // kron power of the shift, generates the center
  std::vector<Matrix> vplus; // spectral projectors of U, two resolutions
  std::vector<Matrix> vminus;
  AlgebraElement a_sym;      // A as an algebra element
  AlgebraElement b_sym;      // B as an algebra element

  // Building blocks reused by the expanded power sum; all unit monomials.
  GammaMonomial u_mono;            // U with the phase normalized to one
  GammaMonomial boundary_up;       // rho^{-1} * (twisted_p)^{n-1} clock_1
  GammaMonomial boundary_down;     // rho * clock_1^{n-1} twisted_p
  std::vector<GammaMonomial> bulk_up;    // site-to-site raising monomials
  std::vector<GammaMonomial> bulk_down;  // and their opposites
  std::vector<GammaMonomial> site_shift; // X_k, the per-site shift monomials
  std::complex<double> x_up{0.0, 0.0};   // b * rho * rho2
  std::complex<double> x_down{0.0, 0.0}; // its reciprocal partner
  std::vector<double> lambda;            // exp(2 a cos(2 pi l / n))
};

TransferOperators build_transfer(const LatticeModel& m,
                                 const SizeGuards& g = {});

/// Tr M^q by dense matrix power.
PartitionResult transfer_partition(const LatticeModel& m,
                                   const SizeGuards& g = {});
PartitionResult transfer_partition(const TransferOperators& ops);

/// Deviations of the projector family from its defining relations, all in
/// max-entry norm: idempotence under n-th powers, orthogonality across
/// sectors and sign choices, completeness, commutation with A and B, and the
/// agreement of B's sector coefficients with the diagonal-times-boundary
/// factorization.
struct ProjectorReport {
  double idempotent = 0.0;
  double orthogonal = 0.0;
  double complete = 0.0;
  double commute = 0.0;
  double sector = 0.0;
  bool pass(double tol_exact = 1e-12, double tol_sector = 1e-10) const {
    return idempotent < tol_exact && orthogonal < tol_exact &&
           complete < tol_exact && commute < tol_exact && sector < tol_sector;
  }
};

ProjectorReport projector_suite(const TransferOperators& ops);

/// M^q assembled sector by sector: sum_k (C_k A)^q (V_k^+ V_k^-)^r with the
/// sector coefficient C_k built from the diagonal bulk factor and the two
/// boundary exponentials, and r the reduced power residue.
Matrix decomposed_power(const TransferOperators& ops);
int reduced_power_residue(int n, int q);

/// Result of expanding M^q into the explicit multiple sum over root-of-unity
/// indices: q blocks of (2 boundary + 2(p-1) bulk + p shift) digits plus the
/// sector index.
struct MultisumResult {
  AlgebraElement element;          // M^q, normalized by n^{-p} per trace unit
  std::complex<double> z{0.0, 0.0};// n^p * identity coefficient = Tr M^q
  long long tuples = 0;            // index tuples (without the center sums)
  int digits = 0;                  // 3 p q + 1
  bool traces_pure = true;         // every per-term trace in {0, omega^i}
};

MultisumResult multisum_power(const LatticeModel& m, const SizeGuards& g = {});

/// Closed-form partition function for n = 2 (four spectral products over the
/// half-integer and integer momentum grids).  Throws std::invalid_argument
/// for n != 2 and for negative couplings, where the single sign switching at
/// the critical point no longer determines the four product signs.
PartitionResult ising_closed_form(const LatticeModel& m);

}  // namespace cliffpart
