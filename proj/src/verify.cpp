#include "cliffpart/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include "cliffpart/errors.hpp"
#include "cliffpart/gca.hpp"
#include "cliffpart/linalg.hpp"
#include "cliffpart/phase.hpp"

namespace cliffpart {

namespace {

using std::complex;

struct Tally {
  double max_dev = 0.0;
  long long checks = 0;
  bool ok = true;
  std::string detail;

  void dev(double d, double tol, const std::string& what) {
    max_dev = std::max(max_dev, d);
    ++checks;
    if (d >= tol && ok) {
      ok = false;
      detail = what + " deviates by " + dtext(d);
    }
  }
  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  SuiteResult done(const std::string& name) const {
    return {name, ok, max_dev, checks, detail};
  }
};

Matrix site_matrix(int n, int p, int site, const Matrix& op) {
  Matrix out = Matrix::Identity(1, 1);
  Matrix id = Matrix::Identity(n, n);
  for (int s = 0; s < p; ++s) out = kron(out, s == site ? op : id);
  return out;
}

double draw(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
}

}  // namespace

SuiteResult suite_representation(const FaultInjection& fault) {
  Tally t;
  for (int n : {2, 3, 4, 5}) {
    const complex<double> w = omega(n);
    const bool even = n % 2 == 0;
    const complex<double> xi =
        std::polar(1.0, std::numbers::pi / n);
    Matrix s1 = pauli(n, 1), s2 = pauli(n, 2), s3 = pauli(n, 3);
    Matrix s3inv = matrix_power(s3, n - 1);
    if (even) {
      t.dev(max_abs(matrix_power(s3, n - 1) * s2 - s1 / xi), 1e-10,
            "even-order clock-twist product");
      t.dev(max_abs(matrix_power(s2, n - 1) * s1 - xi * w * s3inv), 1e-10,
            "even-order twist-shift product");
      t.dev(max_abs(s3 - xi * s2 * matrix_power(s1, n - 1)), 1e-10,
            "even-order clock recovery");
    } else {
      t.dev(max_abs(matrix_power(s3, n - 1) * s2 - s1), 1e-10,
            "odd-order clock-twist product");
      t.dev(max_abs(matrix_power(s2, n - 1) * s1 - w * s3inv), 1e-10,
            "odd-order twist-shift product");
      t.dev(max_abs(s2 - s3 * s1), 1e-10, "odd-order twist factorization");
    }

    for (int p : {1, 2, 3}) {
      AlgebraSignature sig = make_signature(n, p);
      if (fault.active && fault.i < 2 * p && fault.j < 2 * p &&
          fault.i != fault.j)
        sig.comm[fault.i][fault.j] = (sig.comm[fault.i][fault.j] + 1) % n;

      const Matrix id = Matrix::Identity(sig.dim, sig.dim);
      for (int i = 0; i < 2 * p; ++i) {
        t.dev(max_abs(matrix_power(sig.gens[i], n) - id), 1e-12,
              "generator order");
        for (int j = 0; j < 2 * p; ++j) {
          if (i == j) continue;
          double d = max_abs(sig.gens[i] * sig.gens[j] -
                             std::pow(w, sig.comm[i][j]) * sig.gens[j] *
                                 sig.gens[i]);
          t.dev(d, 1e-12,
                "commutation entry (" + std::to_string(i) + "," +
                    std::to_string(j) + ") vs matrix representation (n=" +
                    std::to_string(n) + ",p=" + std::to_string(p) + ")");
        }
      }

      const PhaseExponent r2 = rho2(n);
      auto gen = [&](int i) { return monomial_generator(sig, i); };
      std::vector<Matrix> zc(p), xs(p);
      for (int k = 0; k < p; ++k) {
        zc[k] = site_matrix(n, p, k, s3);
        xs[k] = site_matrix(n, p, k, s1);
      }
      Matrix u = Matrix::Identity(sig.dim, sig.dim);
      for (int k = 0; k < p; ++k) u = u * xs[k];

      for (int k = 0; k < p; ++k) {
        GammaMonomial xk = monomial_mul(
            sig, monomial_pow(sig, gen(k), n - 1), gen(p + k));
        xk.phase = xk.phase * r2.inverse();
        t.dev(max_abs(to_matrix(sig, xk) - xs[k]), 1e-10,
              "per-site shift recovery");
      }
      for (int k = 0; k + 1 < p; ++k) {
        GammaMonomial up = monomial_mul(
            sig, monomial_pow(sig, gen(p + k), n - 1), gen(k + 1));
        up.phase = up.phase * r2 * PhaseExponent::omega_power(n, -1);
        Matrix want = matrix_power(zc[k], n - 1) * zc[k + 1];
        t.dev(max_abs(to_matrix(sig, up) - want), 1e-10,
              "bulk clock-ratio recovery");
        GammaMonomial down = monomial_mul(
            sig, monomial_pow(sig, gen(k + 1), n - 1), gen(p + k));
        down.phase = down.phase * r2.inverse() * PhaseExponent::omega_power(n, 1);
        Matrix want2 = matrix_power(zc[k + 1], n - 1) * zc[k];
        t.dev(max_abs(to_matrix(sig, down) - want2), 1e-10,
              "bulk clock-ratio recovery (reversed)");
      }
      {
        GammaMonomial bu = monomial_mul(
            sig, monomial_pow(sig, gen(2 * p - 1), n - 1), gen(0));
        bu.phase = bu.phase * r2;
        Matrix want = matrix_power(zc[p - 1], n - 1) * zc[0];
        t.dev(max_abs(u * to_matrix(sig, bu) - want), 1e-10,
              "wrap-around clock-ratio recovery");
        GammaMonomial bd = monomial_mul(
            sig, monomial_pow(sig, gen(0), n - 1), gen(2 * p - 1));
        bd.phase = bd.phase * r2.inverse();
        Matrix want2 = matrix_power(zc[0], n - 1) * zc[p - 1];
        t.dev(max_abs(matrix_power(u, n - 1) * to_matrix(sig, bd) - want2),
              1e-10, "wrap-around clock-ratio recovery (reversed)");
      }
      {
        GammaMonomial um = monomial_identity(sig);
        for (int k = 0; k < p; ++k)
          um = monomial_mul(
              sig, um,
              monomial_mul(sig, monomial_pow(sig, gen(k), n - 1), gen(p + k)));
        um.phase = um.phase * r2.pow(-p);
        t.dev(max_abs(to_matrix(sig, um) - u), 1e-10, "center generator recovery");
        GammaMonomial un = monomial_pow(sig, um, n);
        t.expect(std::all_of(un.exps.begin(), un.exps.end(),
                             [](std::uint8_t e) { return e == 0; }) &&
                     un.phase == PhaseExponent::one(n),
                 "center generator n-th power is not exactly the identity");
      }
    }
  }

  // Reorder phase against the dense clock/shift model.
  {
    auto model_phase = [&](int n, const std::vector<int>& perm) {
      int m = static_cast<int>(perm.size());
      Matrix clock = pauli(n, 3), shift = pauli(n, 1);
      std::vector<Matrix> ops(m);
      for (int k = 0; k < m; ++k) {
        Matrix acc = Matrix::Identity(1, 1);
        for (int s = 0; s < m; ++s)
          acc = kron(acc, s < k ? clock
                                : (s == k ? shift : Matrix::Identity(n, n)));
        ops[k] = acc;
      }
      Matrix lhs = Matrix::Identity(ops[0].rows(), ops[0].rows());
      Matrix rhs = lhs;
      for (int k = 0; k < m; ++k) {
        lhs = lhs * ops[perm[k]];
        rhs = rhs * ops[k];
      }
      for (Eigen::Index r = 0; r < rhs.rows(); ++r)
        for (Eigen::Index c = 0; c < rhs.cols(); ++c)
          if (std::abs(rhs(r, c)) > 1e-9) return complex<double>(lhs(r, c) / rhs(r, c));
      return complex<double>(0.0);
    };
    std::vector<int> perm = {0, 1, 2, 3, 4};
    do {
      long long inv = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
          if (perm[i] > perm[j]) ++inv;
      double sign = inv % 2 == 0 ? 1.0 : -1.0;
      t.dev(std::abs(perm_phase(2, perm).value() - sign), 1e-12,
            "order-2 reorder phase vs permutation parity");
      t.dev(std::abs(perm_phase(2, perm).value() - model_phase(2, perm)),
            1e-10, "order-2 reorder phase vs dense model");
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<int> adj = {1, 0, 2};
    t.expect(perm_phase(3, adj) == PhaseExponent::omega_power(3, -1),
             "order-3 adjacent swap phase");
    t.dev(std::abs(perm_phase(3, adj).value() - model_phase(3, adj)), 1e-10,
          "order-3 reorder phase vs dense model");
  }

  return t.done("representation-identities");
}

namespace {

// Direct series evaluation of the n-sected exponential, kept independent of
// the root-of-unity average used by gen_hyperbolic.
complex<double> sected_series(int n, int i, complex<double> x) {
  complex<double> term = 1.0;
  for (int m = 1; m <= i; ++m) term *= x / static_cast<double>(m);
  complex<double> acc = term;
  int m = i;
  for (int steps = 0; steps < 300; ++steps) {
    for (int s = 0; s < n; ++s) term *= x / static_cast<double>(++m);
    acc += term;
    if (std::abs(term) < 1e-20 * std::max(1.0, std::abs(acc))) break;
  }
  return acc;
}

}  // namespace

SuiteResult suite_hyperbolic(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::vector<complex<double>> xs = {0.25, -1.3, 3.0, -3.0,
                                     {0.5, 1.2}, {-2.0, 0.3}};
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  while (xs.size() < 100) xs.push_back(std::polar(radius(rng), angle(rng)));
  for (int n : {2, 3, 4, 5, 6}) {
    const complex<double> w = omega(n);
    for (auto x : xs) {
      auto f = gen_hyperbolic(n, x);
      complex<double> sum = 0.0;
      for (auto v : f) sum += v;
      t.dev(std::abs(sum - std::exp(x)) / std::abs(std::exp(x)), 1e-12,
            "component sum vs exp");
      auto frot = gen_hyperbolic(n, w * x);
      complex<double> wi = 1.0;
      for (int i = 0; i < n; ++i) {
        t.dev(std::abs(frot[i] - wi * f[i]) / std::max(1.0, std::abs(f[i])),
              1e-12, "rotation covariance");
        t.dev(std::abs(f[i] - sected_series(n, i, x)) /
                  std::max(1.0, std::abs(f[i])),
              1e-12, "closed form vs truncated series");
        wi *= w;
      }
    }
  }
  return t.done("hyperbolic-identities");
}

SuiteResult suite_trace_three_way(std::uint64_t seed, const SizeGuards& g) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::map<std::pair<int, int>, AlgebraSignature> cache;
  auto blocked = [](int p, int letter) {
    return letter % 2 == 0 ? letter / 2 : p + letter / 2;
  };
  for (int iter = 0; iter < 200; ++iter) {
    int n = std::array<int, 3>{2, 3, 4}[rng() % 3];
    int p = 1 + static_cast<int>(rng() % 3);
    auto key = std::make_pair(n, p);
    if (!cache.count(key)) cache.emplace(key, make_signature(n, p));
    const AlgebraSignature& sig = cache.at(key);

    std::vector<int> word;
    if (iter % 4 == 3) {
      int len = 1 + static_cast<int>(rng() % (3 * n));
      for (int i = 0; i < len; ++i)
        word.push_back(static_cast<int>(rng() % (2 * p)));
    } else {
      std::vector<int> letters(2 * p);
      for (int i = 0; i < 2 * p; ++i) letters[i] = i;
      std::shuffle(letters.begin(), letters.end(), rng);
      int dn = 1 + static_cast<int>(rng() % std::min<int>(3, 2 * p));
      for (int v = 0; v < dn; ++v) {
        int copies = n * (1 + static_cast<int>(rng() % 2));
        for (int c = 0; c < copies; ++c) word.push_back(letters[v]);
      }
      std::shuffle(word.begin(), word.end(), rng);
    }

    GammaMonomial mono = monomial_identity(sig);
    Matrix prod = Matrix::Identity(sig.dim, sig.dim);
    for (int letter : word) {
      int bidx = blocked(p, letter);
      mono = monomial_mul(sig, mono, monomial_generator(sig, bidx));
      prod = prod * sig.gens[bidx];
    }
    PhaseExponent by_normal = trace_normal_form(sig, mono);
    PhaseExponent by_pairing = trace_pairing_sum(sig, word, g.partitions);
    t.expect(by_normal == by_pairing,
             "combinatorial trace disagrees with normal-form trace");
    complex<double> by_matrix = prod.trace() / static_cast<double>(sig.dim);
    t.dev(std::abs(by_matrix - by_normal.value()), 1e-12,
          "matrix trace vs normal-form trace");
  }
  return t.done("trace-three-way");
}

SuiteResult suite_projectors(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (int n : {2, 3, 4, 5}) {
    for (int p : {1, 2, 3}) {
      for (int rep = 0; rep < 2; ++rep) {
        LatticeModel m{n, p, 1,
                       rep == 0 ? 0.3 : draw(rng),
                       rep == 0 ? 0.2 : draw(rng)};
        TransferOperators ops = build_transfer(m);
        ProjectorReport pr = projector_suite(ops);
        t.dev(pr.idempotent, 1e-12, "projector idempotence");
        t.dev(pr.orthogonal, 1e-12, "projector orthogonality");
        t.dev(pr.complete, 1e-12, "projector completeness");
        t.dev(pr.commute, 1e-12, "projector commutation with transfer factors");
        t.dev(max_abs(ops.U * ops.A - ops.A * ops.U), 1e-12,
              "center commutation with intra-column factor");
        t.dev(pr.sector, 1e-10, "sector coefficient agreement");
      }
    }
  }
  return t.done("projector-family");
}

SuiteResult suite_pipeline(std::uint64_t seed, const SizeGuards& g) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (int n : {2, 3, 4}) {
    for (int p : {1, 2, 3}) {
      for (int q : {1, 2, 3}) {
        for (int rep = 0; rep < 5; ++rep) {
          LatticeModel m{n, p, q, draw(rng), draw(rng)};
          auto zb = brute_force_partition(m, g);
          auto zt = transfer_partition(m, g);
          t.dev(scalar_rel_dev(zt.z, zb.z), 1e-9,
                "transfer vs brute (n=" + std::to_string(n) + ",p=" +
                    std::to_string(p) + ",q=" + std::to_string(q) + ")");
        }
      }
    }
  }
  return t.done("pipeline-brute-vs-transfer");
}

SuiteResult suite_pipeline_full(std::uint64_t seed, const SizeGuards& g) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (int n : {2, 3, 4, 5}) {
    for (int p : {1, 2, 3}) {
      for (int q : {1, 2, 3}) {
        double brute_states = std::pow(static_cast<double>(n), p * q);
        double tuples = std::pow(static_cast<double>(n), 3 * p * q + 1);
        for (int rep = 0; rep < 2; ++rep) {
          LatticeModel m{n, p, q,
                         rep == 0 ? 0.3 : draw(rng),
                         rep == 0 ? 0.2 : draw(rng)};
          TransferOperators ops = build_transfer(m, g);
          auto zt = transfer_partition(ops);
          Matrix mq = matrix_power(ops.M, q);
          t.dev(rel_dev(decomposed_power(ops), mq), 1e-9,
                "sector-decomposed power vs dense power");
          if (brute_states <= static_cast<double>(g.brute)) {
            auto zb = brute_force_partition(m, g);
            t.dev(scalar_rel_dev(zt.z, zb.z), 1e-9, "transfer vs brute");
          }
          if (tuples <= static_cast<double>(g.multisum)) {
            auto ms = multisum_power(m, g);
            t.expect(ms.traces_pure, "multisum term trace outside phase set");
            t.dev(rel_dev(to_matrix(ops.sig, ms.element), mq), 1e-9,
                  "multisum element vs dense power");
            t.dev(scalar_rel_dev(ms.z, zt.z), 1e-9, "multisum trace vs transfer");
          }
        }
      }
    }
  }
  return t.done("pipeline-all-methods");
}

SuiteResult suite_closed_form(std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const std::vector<std::pair<int, int>> shapes = {{2, 2}, {2, 3}, {3, 3}};
  for (auto [p, q] : shapes) {
    // Two fixed points straddle sinh(4a) sinh(4b) = 1; the rest are random
    // within the nonnegative-coupling domain of the closed form.
    std::vector<std::pair<double, double>> couplings = {
        {0.1, 0.1}, {0.35, 0.35}};
    for (int rep = 0; rep < 8; ++rep)
      couplings.push_back({std::abs(draw(rng)), std::abs(draw(rng))});
    for (auto [a, b] : couplings) {
      LatticeModel m{2, p, q, a, b};
      auto zc = ising_closed_form(m);
      auto zb = brute_force_partition(m);
      t.dev(scalar_rel_dev(zc.z, zb.z), 1e-6,
            "closed form vs brute (p=" + std::to_string(p) + ",q=" +
                std::to_string(q) + ")");
      t.dev(std::abs(zc.z.imag()) / std::abs(zc.z), 1e-8,
            "closed form imaginary residue");
    }
  }
  return t.done("closed-form-vs-brute");
}

SuiteResult suite_decomposed(std::uint64_t seed, const SizeGuards& g) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (int n : {2, 3, 4, 5}) {
    for (int p : {1, 2, 3}) {
      // Powers beyond n - 1 exercise the reduced residue of the projector
      // factor, powers at or below it the direct branch.
      std::vector<int> qs = {1, 2, 3};
      if (n == 3 && p == 2) qs.insert(qs.end(), {4, 5, 7});
      for (int q : qs) {
        for (int rep = 0; rep < 2; ++rep) {
          LatticeModel m{n, p, q,
                         rep == 0 ? 0.25 : draw(rng),
                         rep == 0 ? 0.15 : draw(rng)};
          TransferOperators ops = build_transfer(m, g);
          Matrix mq = matrix_power(ops.M, q);
          Matrix dec = decomposed_power(ops);
          t.dev(rel_dev(dec, mq), 1e-9,
                "decomposed power vs dense power (n=" + std::to_string(n) +
                    ",p=" + std::to_string(p) + ",q=" + std::to_string(q) +
                    ")");
          if (std::pow(static_cast<double>(n), p * q) <=
              static_cast<double>(g.brute)) {
            auto zb = brute_force_partition(m, g);
            t.dev(scalar_rel_dev(dec.trace(), zb.z), 1e-9,
                  "decomposed trace vs brute");
          }
        }
      }
    }
  }
  return t.done("sector-decomposition");
}

SuiteResult suite_multisum(std::uint64_t seed, const SizeGuards& g) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, double>> couplings = {{0.3, 0.2}};
  for (int rep = 0; rep < 2; ++rep) couplings.push_back({draw(rng), draw(rng)});
  for (auto [a, b] : couplings) {
    LatticeModel m{2, 2, 2, a, b};
    auto ms = multisum_power(m, g);
    t.expect(ms.digits == 13, "index digit count");
    t.expect(ms.tuples == 8192, "index tuple count");
    t.expect(ms.traces_pure, "per-term trace purity");
    TransferOperators ops = build_transfer(m, g);
    Matrix mq = matrix_power(ops.M, m.q);
    t.dev(rel_dev(to_matrix(ops.sig, ms.element), mq), 1e-9,
          "multisum element vs dense power");
    auto zb = brute_force_partition(m, g);
    t.dev(scalar_rel_dev(ms.z, zb.z), 1e-9, "multisum trace vs brute");
  }
  return t.done("multisum-expansion");
}

VerifyReport run_all_suites(std::uint64_t seed, const SizeGuards& g,
                            const FaultInjection& fault) {
  VerifyReport r;
  r.seed = seed;
  r.suites.push_back(suite_representation(fault));
  r.suites.push_back(suite_hyperbolic(seed));
  r.suites.push_back(suite_trace_three_way(seed, g));
  r.suites.push_back(suite_projectors(seed));
  r.suites.push_back(suite_pipeline(seed, g));
  r.suites.push_back(suite_pipeline_full(seed, g));
  r.suites.push_back(suite_closed_form(seed));
  r.suites.push_back(suite_decomposed(seed, g));
  r.suites.push_back(suite_multisum(seed, g));
  r.pass = std::all_of(r.suites.begin(), r.suites.end(),
                       [](const SuiteResult& s) { return s.pass; });
  return r;
}

}  // namespace cliffpart
