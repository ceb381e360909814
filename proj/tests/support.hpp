#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gwn/ext_fock.hpp"
#include "gwn/measure.hpp"
#include "gwn/sym_tensor.hpp"

namespace gwn::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
inline int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

inline AtomicMeasure random_measure(Rng& rng, int m, double lo = 0.3, double hi = 2.0) {
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w[i] = uniform(rng, lo, hi);
  return AtomicMeasure(w);
}

inline TestFunction random_vec(Rng& rng, int m, double a = -1.0, double b = 1.0) {
  TestFunction v(m);
  for (int i = 0; i < m; ++i) v[i] = uniform(rng, a, b);
  return v;
}

inline Tensor random_tensor(Rng& rng, int m, int n, double a = -1.0, double b = 1.0) {
  Tensor t(m, n);
  for (std::int64_t r = 0; r < t.size(); ++r) t[r] = uniform(rng, a, b);
  return t;
}

inline Fock random_fock(Rng& rng, int m, int N) {
  std::vector<Tensor> ks;
  for (int n = 0; n <= N; ++n) ks.push_back(random_tensor(rng, m, n));
  return Fock(ks);
}

// Relative error against a reference scale.
inline double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(scale, 1e-300); }

// ---- oracles written independently of the library paths ----

// Permutation brute force: each permutation contributes the diagonal integral
// over its cycle partition (one free atom per cycle).
template <typename Scalar>
Scalar permutation_ext_inner_n(const AtomicMeasure& m, const SymTensor<Scalar>& f, const SymTensor<Scalar>& g) {
  const int n = f.degree();
  if (n == 0) return Eigen::numext::conj(f[0]) * g[0];
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total(0);
  std::vector<int> cycle_of(n), x(n);
  do {
    std::fill(cycle_of.begin(), cycle_of.end(), -1);
    int cycles = 0;
    for (int s = 0; s < n; ++s) {
      if (cycle_of[s] != -1) continue;
      for (int p = s; cycle_of[p] == -1; p = perm[p]) cycle_of[p] = cycles;
      ++cycles;
    }
    std::vector<int> j(cycles, 0);
    while (true) {
      double weight = 1.0;
      for (int c = 0; c < cycles; ++c) weight *= m.weight(j[c]);
      for (int p = 0; p < n; ++p) x[p] = j[cycle_of[p]];
      total += Scalar(weight) * Eigen::numext::conj(f.at(x)) * g.at(x);
      int c = cycles - 1;
      while (c >= 0 && ++j[c] == m.atoms()) j[c--] = 0;
      if (c < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// a ⊗̂ b by averaging over all (p+q)! orderings of the tuple positions.
inline double brute_sym_product_at(const Tensor& a, const Tensor& b, const std::vector<int>& x) {
  const int p = a.degree(), n = static_cast<int>(x.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  double count = 0.0;
  std::vector<int> u(p), v(n - p);
  do {
    for (int k = 0; k < p; ++k) u[k] = x[perm[k]];
    for (int k = p; k < n; ++k) v[k - p] = x[perm[k]];
    total += a.at(u) * b.at(v);
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / count;
}

}  // namespace gwn::test
