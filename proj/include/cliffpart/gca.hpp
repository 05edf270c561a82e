#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cliffpart/linalg.hpp"
#include "cliffpart/phase.hpp"

namespace cliffpart {

// ---------------------------------------------------------------------------
// Generator matrices
// ---------------------------------------------------------------------------

/// Order-n analogue of a Pauli matrix, which in {1,2,3}:
///   1: cyclic shift, entries (i, i+1 mod n) = 1
///   2: shift twisted by the clock: entries omega^i (odd n) or xi^{2i-1}
///      (even n) in position (i, i+1 mod n); equals Pauli Y at n = 2
///   3: clock, diag(1, omega, ..., omega^{n-1})
/// All three satisfy s^n = I exactly.
Matrix pauli(int n, int which);

/// The 2p generators of the order-n algebra on p sites, blocked order:
/// index k in [0,p) is clock-type at site k+1 with shift padding on earlier
/// sites, index p+k is the twisted variant.  Dimension n^p.
std::vector<Matrix> gamma_rep(int n, int p);

// ---------------------------------------------------------------------------
// Signature: generators plus derived commutation data
// ---------------------------------------------------------------------------

struct AlgebraSignature {
  int n = 0;
  int p = 0;
  long long dim = 0;
  std::vector<Matrix> gens;             // 2p matrices, blocked order
  std::vector<std::vector<int>> comm;   // G_i G_j = omega^{comm[i][j]} G_j G_i
};

/// Builds the generator matrices and derives the commutation table from them
/// entry by entry; throws std::logic_error when no single omega power relates
/// a pair (a broken representation must never be silently accepted).
/// The dense dimension n^p is capped by dense_guard (CapacityError).
AlgebraSignature make_signature(int n, int p, long long dense_guard = 4096);

// ---------------------------------------------------------------------------
// Monomials and normal ordering
// ---------------------------------------------------------------------------

/// phase * G_0^{e_0} G_1^{e_1} ... G_{2p-1}^{e_{2p-1}}, exponents in [0, n).
struct GammaMonomial {
  PhaseExponent phase;
  std::vector<std::uint8_t> exps;
};

GammaMonomial monomial_identity(const AlgebraSignature& sig);
GammaMonomial monomial_generator(const AlgebraSignature& sig, int index);

/// Normal-ordered product.  Exponents add mod n (the generators have exact
/// order n), and the reordering phase is sum_{i>j} comm[i][j] a_i b_j in
/// omega units.
GammaMonomial monomial_mul(const AlgebraSignature& sig, const GammaMonomial& a,
                           const GammaMonomial& b);

GammaMonomial monomial_pow(const AlgebraSignature& sig, GammaMonomial base,
                           long long m);

/// Trace of a normal-ordered monomial, normalized so the identity has trace
/// one: the monomial's phase when all exponents vanish, zero otherwise.
PhaseExponent trace_normal_form(const AlgebraSignature& sig,
                                const GammaMonomial& m);

Matrix to_matrix(const AlgebraSignature& sig, const GammaMonomial& m);

// ---------------------------------------------------------------------------
// Elements: complex combinations of normal monomials
// ---------------------------------------------------------------------------

struct AlgebraElement {
  std::map<std::vector<std::uint8_t>, std::complex<double>> terms;
};

AlgebraElement element_zero();
AlgebraElement element_from(const AlgebraSignature& sig, const GammaMonomial& m,
                            std::complex<double> coeff = 1.0);
AlgebraElement element_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement element_scale(const AlgebraElement& a, std::complex<double> c);
AlgebraElement element_mul(const AlgebraSignature& sig, const AlgebraElement& a,
                           const AlgebraElement& b);
/// Drops terms below eps relative to the largest coefficient magnitude.
AlgebraElement element_prune(const AlgebraElement& a, double eps = 1e-14);
/// Normalized trace: the coefficient of the identity monomial.
std::complex<double> element_trace(const AlgebraSignature& sig,
                                   const AlgebraElement& a);
Matrix to_matrix(const AlgebraSignature& sig, const AlgebraElement& a);

/// exp(c * u) for a monomial u whose n-th power is exactly the identity with
/// phase one; expands to sum_l f_l(c) u^l via gen_hyperbolic.  Throws
/// std::domain_error when u fails the unit-power precondition.
AlgebraElement exp_unit_monomial(const AlgebraSignature& sig,
                                 std::complex<double> c,
                                 const GammaMonomial& u);

// ---------------------------------------------------------------------------
// Permutation phases and the combinatorial trace
// ---------------------------------------------------------------------------

/// Phase picked up when sorting a word of m distinct symbols, each adjacent
/// swap of out-of-order symbols contributing omega^{-1}:
/// omega^{-inversions(perm)}.  perm is 0-based and must be a permutation.
PhaseExponent perm_phase(int n, const std::vector<int>& perm);

/// Trace of a generator word evaluated combinatorially, without matrices.
///
/// word lists generator indices in interleaved site order: 2k is the
/// clock-type generator at site k+1, 2k+1 the twisted one.  The trace
/// vanishes unless the word length and every generator's multiplicity are
/// multiples of n.  Otherwise it is the sum over set partitions of the
/// positions into n-element blocks of equal letters, each partition weighted
/// by the phase of the permutation that gathers its blocks together
/// (perm_phase in the uniform interleaved commutation phase).  The number of
/// partitions is capped by partition_guard (CapacityError).
/// The result is exact: integer counts per phase class, matched at the end
/// to zero or a single root of unity.
PhaseExponent trace_pairing_sum(const AlgebraSignature& sig,
                                const std::vector<int>& word,
                                long long partition_guard = 2000000);

/// Number of equal-letter block partitions of the word (the term count of
/// trace_pairing_sum), computed from multiplicities alone.
double pairing_partition_count(int n, const std::vector<int>& word);

}  // namespace cliffpart
