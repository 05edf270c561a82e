#pragma once

// Independent reference implementations used only by the test suite.  These
// deliberately avoid the code paths of the library under test: series
// summation instead of closed forms, Taylor scaling-and-squaring instead of
// finite unit-monomial expansions, crossing-number matchings instead of
// inversion counting.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracles {

using Matrix = Eigen::MatrixXcd;

// f_i(x) = sum_{k>=0} x^{nk+i}/(nk+i)!, summed term by term until the terms
// fall below 1e-20 relative to the running value.
inline std::complex<double> gen_hyperbolic_series(int n, int i,
                                                  std::complex<double> x) {
  std::complex<double> term = 1.0;
  for (int j = 1; j <= i; ++j) term *= x / static_cast<double>(j);
  std::complex<double> sum = term;
  int k = i;
  for (int iter = 0; iter < 400; ++iter) {
    for (int j = 1; j <= n; ++j) term *= x / static_cast<double>(k + j);
    k += n;
    sum += term;
    if (std::abs(term) < 1e-20 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Plain scaling-and-squaring matrix exponential with a Taylor core.
inline Matrix matrix_exp(const Matrix& a) {
  double norm = a.cwiseAbs().maxCoeff() * a.rows();
  int s = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++s;
  }
  Matrix b = a / std::pow(2.0, s);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

// Weyl pair model for permutation reorder phases: m operators
// T_k = C^{(k-1)} (x) S (x) I^{(m-k)} built from the order-n clock C and
// shift S, which satisfy T_k T_l = omega T_l T_k for k < l.  The scalar
// relating T_{s(1)}..T_{s(m)} to T_1..T_m is read off numerically.
inline std::complex<double> reorder_phase_matrix(int n,
                                                 const std::vector<int>& perm) {
  int m = static_cast<int>(perm.size());
  const std::complex<double> w =
      std::polar(1.0, 2.0 * std::numbers::pi / n);
  Matrix clock = Matrix::Zero(n, n);
  Matrix shift = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    clock(i, i) = std::pow(w, i);
    shift(i, (i + 1) % n) = 1.0;
  }
  auto site_op = [&](int k) {
    Matrix out = Matrix::Identity(1, 1);
    for (int j = 0; j < m; ++j) {
      const Matrix& factor = (j < k) ? clock : (j == k ? shift : Matrix::Identity(n, n));
      Matrix next(out.rows() * factor.rows(), out.cols() * factor.cols());
      for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c)
          next.block(r * factor.rows(), c * factor.cols(), factor.rows(),
                     factor.cols()) = out(r, c) * factor;
      out = next;
    }
    return out;
  };
  long long dim = 1;
  for (int j = 0; j < m; ++j) dim *= n;
  Matrix permuted = Matrix::Identity(dim, dim);
  Matrix ordered = Matrix::Identity(dim, dim);
  std::vector<Matrix> ops(m);
  for (int k = 0; k < m; ++k) ops[k] = site_op(k);
  for (int k = 0; k < m; ++k) {
    permuted = permuted * ops[perm[k]];
    ordered = ordered * ops[k];
  }
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      if (std::abs(ordered(r, c)) > 1e-9) return permuted(r, c) / ordered(r, c);
  return 0.0;
}

// Order-2 trace oracle: sum over perfect matchings of the word positions into
// equal-letter pairs, signed by the number of crossing pairs.  Two pairs
// (i<j) and (k<l) cross when i < k < j < l.
inline double matching_trace_sum(const std::vector<int>& word) {
  int m = static_cast<int>(word.size());
  if (m % 2 != 0) return 0.0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(m, false);
  double total = 0.0;
  auto crossings = [&]() {
    int c = 0;
    for (size_t x = 0; x < pairs.size(); ++x)
      for (size_t y = x + 1; y < pairs.size(); ++y) {
        auto [i, j] = pairs[x];
        auto [k, l] = pairs[y];
        if (k > i && k < j && l > j) ++c;
        if (i > k && i < l && j > l) ++c;
      }
    return c;
  };
  auto rec = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < m; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      total += (crossings() % 2 == 0) ? 1.0 : -1.0;
      return;
    }
    for (int j = first + 1; j < m; ++j) {
      if (used[j] || word[j] != word[first]) continue;
      used[first] = used[j] = true;
      pairs.emplace_back(first, j);
      self(self);
      pairs.pop_back();
      used[first] = used[j] = false;
    }
  };
  rec(rec);
  return total;
}

}  // namespace oracles
