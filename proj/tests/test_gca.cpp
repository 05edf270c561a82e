#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "cliffpart/errors.hpp"
#include "cliffpart/gca.hpp"
#include "cliffpart/phase.hpp"
#include "support/oracles.hpp"

using namespace cliffpart;
using std::complex;

namespace {
const complex<double> I{0.0, 1.0};

int blocked(int p, int letter) {
  return letter % 2 == 0 ? letter / 2 : p + letter / 2;
}

GammaMonomial random_monomial(const AlgebraSignature& sig,
                              std::mt19937_64& rng) {
  GammaMonomial m = monomial_identity(sig);
  for (auto& e : m.exps) e = static_cast<std::uint8_t>(rng() % sig.n);
  m.phase = PhaseExponent::root_power(sig.n, static_cast<long long>(rng() % 12));
  return m;
}
}  // namespace

TEST_CASE("order-2 generator matrices are the Pauli triple") {
  Matrix s1 = pauli(2, 1), s2 = pauli(2, 2), s3 = pauli(2, 3);
  CHECK(std::abs(s1(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(s1(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s2(0, 1) + I) < 1e-15);
  CHECK(std::abs(s2(1, 0) - I) < 1e-15);
  CHECK(std::abs(s3(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s3(1, 1) + 1.0) < 1e-15);
}

TEST_CASE("twisted shift entries") {
  const complex<double> w3 = omega(3);
  Matrix s2 = pauli(3, 2);
  CHECK(std::abs(s2(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(s2(1, 2) - w3) < 1e-15);
  CHECK(std::abs(s2(2, 0) - w3 * w3) < 1e-15);

  Matrix t2 = pauli(4, 2);
  auto xi = [](long long k) {
    return std::polar(1.0, std::numbers::pi * k / 4.0);
  };
  CHECK(std::abs(t2(0, 1) - xi(-1)) < 1e-15);
  CHECK(std::abs(t2(1, 2) - xi(1)) < 1e-15);
  CHECK(std::abs(t2(2, 3) - xi(3)) < 1e-15);
  CHECK(std::abs(t2(3, 0) - xi(5)) < 1e-15);
}

TEST_CASE("all generators have exact order n") {
  for (int n : {2, 3, 4, 5}) {
    for (int p : {1, 2, 3}) {
      AlgebraSignature sig = make_signature(n, p);
      Matrix id = Matrix::Identity(sig.dim, sig.dim);
      for (const auto& g : sig.gens)
        CHECK(max_abs(matrix_power(g, n) - id) < 1e-12);
    }
  }
}

TEST_CASE("commutation table structure") {
  for (int n : {2, 3, 4, 5}) {
    for (int p : {1, 2, 3}) {
      AlgebraSignature sig = make_signature(n, p);
      for (int i = 0; i < 2 * p; ++i)
        for (int j = 0; j < 2 * p; ++j) {
          if (i == j) {
            CHECK(sig.comm[i][j] == 0);
          } else {
            CHECK((sig.comm[i][j] + sig.comm[j][i]) % n == 0);
          }
        }
      // Interleaved order: every earlier-letter/later-letter pair swaps with
      // the same phase omega^{n-1}; this uniformity carries the whole trace
      // expansion.
      for (int t = 0; t < 2 * p; ++t)
        for (int u = t + 1; u < 2 * p; ++u)
          CHECK(sig.comm[blocked(p, t)][blocked(p, u)] == (n - 1) % n);
    }
  }
}

TEST_CASE("monomial products match the dense representation") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4}) {
    for (int p : {1, 2, 3}) {
      AlgebraSignature sig = make_signature(n, p);
      for (int iter = 0; iter < 25; ++iter) {
        GammaMonomial a = random_monomial(sig, rng);
        GammaMonomial b = random_monomial(sig, rng);
        GammaMonomial ab = monomial_mul(sig, a, b);
        Matrix lhs = to_matrix(sig, ab);
        Matrix rhs = to_matrix(sig, a) * to_matrix(sig, b);
        CHECK(rel_dev(lhs, rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("monomial powers") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 5}) {
    AlgebraSignature sig = make_signature(n, 2);
    for (int iter = 0; iter < 10; ++iter) {
      GammaMonomial m = random_monomial(sig, rng);
      GammaMonomial acc = monomial_identity(sig);
      for (int e = 0; e <= 2 * n + 1; ++e) {
        GammaMonomial viaPow = monomial_pow(sig, m, e);
        CHECK(viaPow.exps == acc.exps);
        CHECK(viaPow.phase == acc.phase);
        acc = monomial_mul(sig, acc, m);
      }
    }
    for (int i = 0; i < 4; ++i) {
      GammaMonomial gn = monomial_pow(sig, monomial_generator(sig, i), n);
      CHECK(std::all_of(gn.exps.begin(), gn.exps.end(),
                        [](std::uint8_t e) { return e == 0; }));
      CHECK(gn.phase == PhaseExponent::one(n));
    }
  }
}

TEST_CASE("normal-form trace against the dense trace") {
  std::mt19937_64 rng(13);
  for (int n : {2, 3, 4}) {
    AlgebraSignature sig = make_signature(n, 2);
    for (int iter = 0; iter < 40; ++iter) {
      GammaMonomial m = random_monomial(sig, rng);
      complex<double> dense = to_matrix(sig, m).trace() /
                              static_cast<double>(sig.dim);
      CHECK(std::abs(dense - trace_normal_form(sig, m).value()) < 1e-12);
    }
  }
}

TEST_CASE("reorder phase equals permutation parity at order 2") {
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    long long inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inv;
    double sign = inv % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(perm_phase(2, perm).value() - sign) < 1e-14);
    CHECK(std::abs(perm_phase(2, perm).value() -
                   oracles::reorder_phase_matrix(2, perm)) < 1e-10);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("reorder phase against the clock-shift model") {
  std::vector<int> p3 = {0, 1, 2};
  do {
    CHECK(std::abs(perm_phase(3, p3).value() -
                   oracles::reorder_phase_matrix(3, p3)) < 1e-10);
    CHECK(std::abs(perm_phase(4, p3).value() -
                   oracles::reorder_phase_matrix(4, p3)) < 1e-10);
  } while (std::next_permutation(p3.begin(), p3.end()));

  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 8; ++iter) {
    std::vector<int> p5 = {0, 1, 2, 3, 4};
    std::shuffle(p5.begin(), p5.end(), rng);
    CHECK(std::abs(perm_phase(3, p5).value() -
                   oracles::reorder_phase_matrix(3, p5)) < 1e-10);
  }
  CHECK(perm_phase(3, {1, 0, 2}) == PhaseExponent::omega_power(3, -1));
  CHECK_THROWS(perm_phase(3, {0, 0, 1}));
}

TEST_CASE("combinatorial trace at order 2 against the matching oracle") {
  std::mt19937_64 rng(17);
  AlgebraSignature sig = make_signature(2, 2);
  for (int iter = 0; iter < 60; ++iter) {
    int len = static_cast<int>(rng() % 9);
    std::vector<int> word(len);
    for (auto& v : word) v = static_cast<int>(rng() % 4);
    double ref = oracles::matching_trace_sum(word);
    PhaseExponent got = trace_pairing_sum(sig, word);
    CHECK(std::abs(got.value() - ref) < 1e-12);
  }
}

TEST_CASE("combinatorial trace three-way on structured words") {
  std::mt19937_64 rng(19);
  for (int n : {2, 3, 4}) {
    for (int p : {1, 2}) {
      AlgebraSignature sig = make_signature(n, p);
      for (int iter = 0; iter < 20; ++iter) {
        std::vector<int> word;
        int dn = 1 + static_cast<int>(rng() % (2 * p));
        for (int v = 0; v < dn; ++v) {
          int copies = n * (1 + static_cast<int>(rng() % 2));
          for (int c = 0; c < copies; ++c) word.push_back(v);
        }
        std::shuffle(word.begin(), word.end(), rng);

        GammaMonomial mono = monomial_identity(sig);
        Matrix prod = Matrix::Identity(sig.dim, sig.dim);
        for (int letter : word) {
          mono = monomial_mul(sig, mono,
                              monomial_generator(sig, blocked(p, letter)));
          prod = prod * sig.gens[blocked(p, letter)];
        }
        PhaseExponent by_pairing = trace_pairing_sum(sig, word);
        PhaseExponent by_normal = trace_normal_form(sig, mono);
        CHECK(by_pairing == by_normal);
        CHECK(std::abs(prod.trace() / static_cast<double>(sig.dim) -
                       by_pairing.value()) < 1e-12);
      }
    }
  }
}

TEST_CASE("combinatorial trace pinned values") {
  AlgebraSignature s31 = make_signature(3, 1);
  CHECK(trace_pairing_sum(s31, {0, 0, 0}) == PhaseExponent::one(3));
  CHECK(trace_pairing_sum(s31, {1, 1, 1, 1, 1, 1}) == PhaseExponent::one(3));
  CHECK(trace_pairing_sum(s31, {0, 1, 1, 0, 0, 1}) ==
        PhaseExponent::omega_power(3, 1));
  CHECK(trace_pairing_sum(s31, {0, 0}).is_zero());
  CHECK(trace_pairing_sum(s31, {0, 0, 0, 1, 1}).is_zero());
  CHECK(trace_pairing_sum(s31, {}) == PhaseExponent::one(3));

  AlgebraSignature s21 = make_signature(2, 1);
  CHECK(trace_pairing_sum(s21, {0, 0, 0, 0}) == PhaseExponent::one(2));
  CHECK(trace_pairing_sum(s21, {0, 1, 0, 1}) ==
        PhaseExponent::omega_power(2, 1));
}

TEST_CASE("partition counts and the capacity guard") {
  CHECK(pairing_partition_count(2, {0, 0, 0, 0}) == doctest::Approx(3.0));
  CHECK(pairing_partition_count(3, {0, 0, 0, 0, 0, 0}) ==
        doctest::Approx(10.0));
  CHECK(pairing_partition_count(4, std::vector<int>(8, 0)) ==
        doctest::Approx(35.0));
  AlgebraSignature sig = make_signature(2, 1);
  std::vector<int> big(24, 0);
  CHECK_THROWS_AS((void)trace_pairing_sum(sig, big, 1000), CapacityError);
}

TEST_CASE("unit-monomial exponential against scaling-and-squaring") {
  std::mt19937_64 rng(23);
  for (int n : {2, 3, 4}) {
    for (int p : {1, 2}) {
      AlgebraSignature sig = make_signature(n, p);
      std::vector<GammaMonomial> units;
      for (int i = 0; i < 2 * p; ++i)
        units.push_back(monomial_generator(sig, i));
      for (complex<double> c : {complex<double>{0.4, 0.0},
                                complex<double>{-1.1, 0.0},
                                complex<double>{0.3, 0.7}}) {
        for (const auto& u : units) {
          AlgebraElement e = exp_unit_monomial(sig, c, u);
          Matrix got = to_matrix(sig, e);
          Matrix want = oracles::matrix_exp(c * to_matrix(sig, u));
          CHECK(rel_dev(got, want) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("unit-monomial exponential rejects non-unit powers") {
  AlgebraSignature sig = make_signature(2, 1);
  GammaMonomial bad = monomial_identity(sig);
  bad.phase = PhaseExponent::xi_power(2, 1);  // (xi I)^2 = -I
  CHECK_THROWS_AS((void)exp_unit_monomial(sig, 0.5, bad), std::domain_error);
}

TEST_CASE("element arithmetic matches the dense representation") {
  std::mt19937_64 rng(29);
  AlgebraSignature sig = make_signature(3, 2);
  auto random_element = [&](int terms) {
    AlgebraElement e;
    for (int t = 0; t < terms; ++t) {
      GammaMonomial m = random_monomial(sig, rng);
      complex<double> c{std::uniform_real_distribution<double>(-1, 1)(rng),
                        std::uniform_real_distribution<double>(-1, 1)(rng)};
      e = element_add(e, element_from(sig, m, c));
    }
    return e;
  };
  for (int iter = 0; iter < 6; ++iter) {
    AlgebraElement x = random_element(4);
    AlgebraElement y = random_element(3);
    Matrix mx = to_matrix(sig, x), my = to_matrix(sig, y);
    CHECK(rel_dev(to_matrix(sig, element_add(x, y)), mx + my) < 1e-12);
    CHECK(rel_dev(to_matrix(sig, element_mul(sig, x, y)), mx * my) < 1e-12);
    CHECK(rel_dev(to_matrix(sig, element_scale(x, 2.0 - I)), (2.0 - I) * mx) <
          1e-12);
    CHECK(std::abs(element_trace(sig, x) -
                   mx.trace() / static_cast<double>(sig.dim)) < 1e-12);
  }
  AlgebraElement tiny = element_add(
      element_from(sig, monomial_identity(sig), 1.0),
      element_from(sig, monomial_generator(sig, 0), 1e-16));
  CHECK(element_prune(tiny).terms.size() == 1);
}

TEST_CASE("signature guards") {
  CHECK_THROWS_AS((void)make_signature(2, 13), CapacityError);
  CHECK_THROWS_AS((void)make_signature(1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)pauli(3, 4), std::invalid_argument);
}
