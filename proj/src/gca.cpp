#include "cliffpart/gca.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cliffpart/errors.hpp"

namespace cliffpart {

namespace {

int mod(long long k, int m) {
  long long r = k % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

void check_np(int n, int p) {
  if (n < 2) throw std::invalid_argument("order n must be at least 2");
  if (p < 1) throw std::invalid_argument("site count p must be at least 1");
}

}  // namespace

Matrix pauli(int n, int which) {
  if (n < 2) throw std::invalid_argument("order n must be at least 2");
  Matrix m = Matrix::Zero(n, n);
  switch (which) {
    case 1:
      for (int i = 0; i < n; ++i) m(i, (i + 1) % n) = 1.0;
      return m;
    case 2:
      for (int i = 0; i < n; ++i) {
        double arg = n % 2 == 1
                         ? 2.0 * std::numbers::pi * i / n
                         : std::numbers::pi * (2 * i - 1) / n;
        m(i, (i + 1) % n) = std::polar(1.0, arg);
      }
      return m;
    case 3:
      for (int i = 0; i < n; ++i)
        m(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * i / n);
      return m;
    default:
      throw std::invalid_argument("pauli index must be 1, 2 or 3");
  }
}

std::vector<Matrix> gamma_rep(int n, int p) {
  check_np(n, p);
  Matrix s1 = pauli(n, 1), s2 = pauli(n, 2), s3 = pauli(n, 3);
  Matrix id = Matrix::Identity(n, n);
  std::vector<Matrix> gens(2 * p);
  for (int k = 0; k < p; ++k) {
    Matrix even = Matrix::Identity(1, 1);
    Matrix odd = Matrix::Identity(1, 1);
    for (int site = 0; site < p; ++site) {
      const Matrix& e = site < k ? s1 : (site == k ? s3 : id);
      const Matrix& o = site < k ? s1 : (site == k ? s2 : id);
      even = kron(even, e);
      odd = kron(odd, o);
    }
    gens[k] = even;
    gens[p + k] = odd;
  }
  return gens;
}

AlgebraSignature make_signature(int n, int p, long long dense_guard) {
  check_np(n, p);
  long long dim = 1;
  for (int k = 0; k < p; ++k) {
    dim *= n;
    if (dim > dense_guard)
      throw CapacityError("dense representation dimension n^p exceeds guard",
                          std::pow(static_cast<double>(n), p),
                          static_cast<double>(dense_guard));
  }

  AlgebraSignature sig;
  sig.n = n;
  sig.p = p;
  sig.dim = dim;
  sig.gens = gamma_rep(n, p);

  const Matrix id = Matrix::Identity(dim, dim);
  for (int i = 0; i < 2 * p; ++i) {
    if (rel_dev(matrix_power(sig.gens[i], n), id) > 1e-12)
      throw std::logic_error("generator " + std::to_string(i) +
                             " does not have exact order n");
  }

  const std::complex<double> w = omega(n);
  sig.comm.assign(2 * p, std::vector<int>(2 * p, 0));
  for (int i = 0; i < 2 * p; ++i) {
    for (int j = 0; j < 2 * p; ++j) {
      if (i == j) continue;
      Matrix lhs = sig.gens[i] * sig.gens[j];
      Matrix rhs = sig.gens[j] * sig.gens[i];
      int found = -1;
      for (int c = 0; c < n; ++c) {
        if (rel_dev(lhs, std::pow(w, c) * rhs) < 1e-12) {
          if (found >= 0)
            throw std::logic_error("ambiguous commutation phase for pair " +
                                   std::to_string(i) + "," + std::to_string(j));
          found = c;
        }
      }
      if (found < 0)
        throw std::logic_error(
            "generators " + std::to_string(i) + "," + std::to_string(j) +
            " are not related by a single omega power; representation is "
            "inconsistent");
      sig.comm[i][j] = found;
    }
  }
  return sig;
}

GammaMonomial monomial_identity(const AlgebraSignature& sig) {
  return {PhaseExponent::one(sig.n),
          std::vector<std::uint8_t>(2 * sig.p, 0)};
}

GammaMonomial monomial_generator(const AlgebraSignature& sig, int index) {
  if (index < 0 || index >= 2 * sig.p)
    throw std::invalid_argument("generator index out of range");
  GammaMonomial m = monomial_identity(sig);
  m.exps[index] = 1;
  return m;
}

GammaMonomial monomial_mul(const AlgebraSignature& sig, const GammaMonomial& a,
                           const GammaMonomial& b) {
  const int g = 2 * sig.p;
  if (static_cast<int>(a.exps.size()) != g ||
      static_cast<int>(b.exps.size()) != g)
    throw std::invalid_argument("monomial exponent size mismatch");
  long long cross = 0;
  for (int i = 1; i < g; ++i) {
    if (a.exps[i] == 0) continue;
    for (int j = 0; j < i; ++j)
      cross += static_cast<long long>(sig.comm[i][j]) * a.exps[i] * b.exps[j];
  }
  GammaMonomial out;
  out.phase = a.phase * b.phase * PhaseExponent::omega_power(sig.n, cross);
  out.exps.resize(g);
  for (int i = 0; i < g; ++i)
    out.exps[i] = static_cast<std::uint8_t>((a.exps[i] + b.exps[i]) % sig.n);
  return out;
}

GammaMonomial monomial_pow(const AlgebraSignature& sig, GammaMonomial base,
                           long long m) {
  if (m < 0) throw std::invalid_argument("monomial power must be nonnegative");
  GammaMonomial acc = monomial_identity(sig);
  while (m > 0) {
    if (m & 1) acc = monomial_mul(sig, acc, base);
    m >>= 1;
    if (m) base = monomial_mul(sig, base, base);
  }
  return acc;
}

PhaseExponent trace_normal_form(const AlgebraSignature& sig,
                                const GammaMonomial& m) {
  for (auto e : m.exps)
    if (e != 0) return PhaseExponent::zero(sig.n);
  return m.phase;
}

Matrix to_matrix(const AlgebraSignature& sig, const GammaMonomial& m) {
  Matrix acc = m.phase.value() * Matrix::Identity(sig.dim, sig.dim);
  for (int i = 0; i < 2 * sig.p; ++i)
    for (int k = 0; k < m.exps[i]; ++k) acc = acc * sig.gens[i];
  return acc;
}

AlgebraElement element_zero() { return {}; }

AlgebraElement element_from(const AlgebraSignature& sig, const GammaMonomial& m,
                            std::complex<double> coeff) {
  (void)sig;
  AlgebraElement out;
  std::complex<double> c = coeff * m.phase.value();
  if (c != 0.0) out.terms[m.exps] = c;
  return out;
}

AlgebraElement element_add(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  for (const auto& [e, c] : b.terms) out.terms[e] += c;
  return out;
}

AlgebraElement element_scale(const AlgebraElement& a, std::complex<double> c) {
  AlgebraElement out;
  for (const auto& [e, v] : a.terms) out.terms[e] = v * c;
  return out;
}

AlgebraElement element_mul(const AlgebraSignature& sig, const AlgebraElement& a,
                           const AlgebraElement& b) {
  AlgebraElement out;
  GammaMonomial ma{PhaseExponent::one(sig.n), {}};
  GammaMonomial mb{PhaseExponent::one(sig.n), {}};
  for (const auto& [ea, ca] : a.terms) {
    ma.exps = ea;
    for (const auto& [eb, cb] : b.terms) {
      mb.exps = eb;
      GammaMonomial prod = monomial_mul(sig, ma, mb);
      out.terms[prod.exps] += ca * cb * prod.phase.value();
    }
  }
  return out;
}

AlgebraElement element_prune(const AlgebraElement& a, double eps) {
  double peak = 0.0;
  for (const auto& [e, c] : a.terms) peak = std::max(peak, std::abs(c));
  AlgebraElement out;
  for (const auto& [e, c] : a.terms)
    if (std::abs(c) > eps * peak) out.terms[e] = c;
  return out;
}

std::complex<double> element_trace(const AlgebraSignature& sig,
                                   const AlgebraElement& a) {
  std::vector<std::uint8_t> id(2 * sig.p, 0);
  auto it = a.terms.find(id);
  return it == a.terms.end() ? std::complex<double>{0.0, 0.0} : it->second;
}

Matrix to_matrix(const AlgebraSignature& sig, const AlgebraElement& a) {
  Matrix acc = Matrix::Zero(sig.dim, sig.dim);
  GammaMonomial m{PhaseExponent::one(sig.n), {}};
  for (const auto& [e, c] : a.terms) {
    m.exps = e;
    acc += c * to_matrix(sig, m);
  }
  return acc;
}

AlgebraElement exp_unit_monomial(const AlgebraSignature& sig,
                                 std::complex<double> c,
                                 const GammaMonomial& u) {
  GammaMonomial un = monomial_pow(sig, u, sig.n);
  bool scalar = std::all_of(un.exps.begin(), un.exps.end(),
                            [](std::uint8_t e) { return e == 0; });
  if (!scalar || !(un.phase == PhaseExponent::one(sig.n))) {
    std::string phase_desc =
        un.phase.is_zero() ? "0" : "exponent " + std::to_string(un.phase.exponent());
    throw std::domain_error(
        "exp_unit_monomial requires u^n == identity with phase one; got "
        "phase " + phase_desc);
  }
  auto f = gen_hyperbolic(sig.n, c);
  AlgebraElement out;
  GammaMonomial power = monomial_identity(sig);
  for (int l = 0; l < sig.n; ++l) {
    out = element_add(out, element_from(sig, power, f[l]));
    power = monomial_mul(sig, power, u);
  }
  return out;
}

PhaseExponent perm_phase(int n, const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  std::vector<bool> seen(m, false);
  for (int v : perm) {
    if (v < 0 || v >= m || seen[v])
      throw std::invalid_argument("perm_phase argument is not a permutation");
    seen[v] = true;
  }
  long long inv = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (perm[i] > perm[j]) ++inv;
  return PhaseExponent::omega_power(n, -inv);
}

double pairing_partition_count(int n, const std::vector<int>& word) {
  std::map<int, long long> mult;
  for (int v : word) ++mult[v];
  double nfact = 1.0;
  for (int j = 2; j <= n; ++j) nfact *= j;
  double total = 1.0;
  for (const auto& [v, mu] : mult) {
    if (mu % n != 0) return 0.0;
    long long blocks = mu / n;
    double ways = 1.0;
    for (long long j = 2; j <= mu; ++j) ways *= static_cast<double>(j);
    for (long long b = 0; b < blocks; ++b) ways /= nfact;
    for (long long b = 2; b <= blocks; ++b) ways /= static_cast<double>(b);
    total *= ways;
  }
  return total;
}

namespace {

int mod_exponent(long long k, int md) {
  long long r = k % md;
  if (r < 0) r += md;
  return static_cast<int>(r);
}

// Enumerates the ways to split positions 0..m-1 into m/n blocks of n, blocks
// ordered by their smallest member, and bins each split by its number of
// cross-block inversions mod n (pairs u < v with v in an earlier block).
struct BlockSplitter {
  int n;
  int m;
  std::vector<bool> used;
  std::vector<bool> placed;
  std::vector<long long> bins;  // split counts per inversion class

  void run(int placed_count, long long inv) {
    if (placed_count == m) {
      bins[mod_exponent(inv, n)] += 1;
      return;
    }
    int first = 0;
    while (used[first]) ++first;
    // Each recursion level builds its own partner list; the deeper levels
    // start blocks of their own and must not disturb it.
    std::vector<int> partners;
    partners.reserve(n - 1);
    choose(partners, first, first + 1, n - 1, placed_count, inv);
  }

  void choose(std::vector<int>& partners, int first, int from, int need,
              int placed_count, long long inv) {
    if (need == 0) {
      long long added = 0;
      auto place = [&](int b) {
        for (int t = b + 1; t < m; ++t)
          if (placed[t]) ++added;
        placed[b] = true;
        used[b] = true;
      };
      place(first);
      for (int b : partners) place(b);
      run(placed_count + n, inv + added);
      placed[first] = false;
      used[first] = false;
      for (int b : partners) {
        placed[b] = false;
        used[b] = false;
      }
      return;
    }
    for (int j = from; j <= m - need; ++j) {
      if (used[j]) continue;
      partners.push_back(j);
      choose(partners, first, j + 1, need - 1, placed_count, inv);
      partners.pop_back();
    }
  }
};

std::vector<long long> split_inversion_bins(int n, int count) {
  BlockSplitter st;
  st.n = n;
  st.m = count;
  st.used.assign(count, false);
  st.placed.assign(count, false);
  st.bins.assign(n, 0);
  st.run(0, 0);
  return st.bins;
}

}  // namespace

PhaseExponent trace_pairing_sum(const AlgebraSignature& sig,
                                const std::vector<int>& word,
                                long long partition_guard) {
  const int n = sig.n;
  const int m = static_cast<int>(word.size());
  for (int v : word)
    if (v < 0 || v >= 2 * sig.p)
      throw std::invalid_argument("word letter out of range");
  if (m % n != 0) return PhaseExponent::zero(n);
  {
    std::map<int, int> mult;
    for (int v : word) ++mult[v];
    for (const auto& [v, mu] : mult)
      if (mu % n != 0) return PhaseExponent::zero(n);
  }

  double count = pairing_partition_count(n, word);
  if (count > static_cast<double>(partition_guard))
    throw CapacityError("pairing partition count exceeds guard", count,
                        static_cast<double>(partition_guard));

  // The block expansion is valid because in interleaved order (2k is the
  // clock-type generator of site k+1, 2k+1 the twisted one) every generator
  // pair swaps with one and the same omega power.  Read it off the table and
  // insist on uniformity.
  auto blocked = [&](int t) { return t % 2 == 0 ? t / 2 : sig.p + t / 2; };
  int uniform = 0;
  bool have = false;
  for (int t = 0; t < 2 * sig.p; ++t)
    for (int u = t + 1; u < 2 * sig.p; ++u) {
      int c = sig.comm[blocked(t)][blocked(u)];
      if (!have) {
        uniform = c;
        have = true;
      } else if (c != uniform) {
        throw std::logic_error(
            "trace expansion requires a uniform commutation phase in "
            "interleaved generator order");
      }
    }
  const int e = have ? uniform : 0;

  // Each admissible split of the positions into n-element equal-letter
  // blocks gets the weight omega^{-e X}, X its inversion count when blocks
  // are arranged by letter first (leaders break ties within a letter) and
  // ascending inside.  X decomposes into a split-independent cross-letter
  // part plus one cross-block count per letter, so the class distribution of
  // the full sum is the cyclic convolution of the per-letter distributions,
  // rotated by the cross-letter part.
  long long cross_letter = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (word[i] > word[j]) ++cross_letter;

  std::map<int, int> mult;
  for (int v : word) ++mult[v];
  std::vector<long long> total(n, 0);
  total[mod_exponent(-static_cast<long long>(e) * cross_letter, n)] = 1;
  for (const auto& [letter, mu] : mult) {
    std::vector<long long> raw = split_inversion_bins(n, mu);
    std::vector<long long> dist(n, 0);
    for (int x = 0; x < n; ++x)
      dist[mod_exponent(-static_cast<long long>(e) * x, n)] += raw[x];
    std::vector<long long> next(n, 0);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        next[(r + s) % n] += total[r] * dist[s];
    total = next;
  }

  const std::complex<double> w = omega(n);
  std::complex<double> z = 0.0;
  for (int j = 0; j < n; ++j)
    z += static_cast<double>(total[j]) * std::pow(w, j);
  if (std::abs(z) < 1e-6) return PhaseExponent::zero(n);
  for (int l = 0; l < n; ++l)
    if (std::abs(z - std::pow(w, l)) < 1e-6)
      return PhaseExponent::omega_power(n, l);
  throw std::logic_error("trace value is neither zero nor a single root of unity");
}

}  // namespace cliffpart
