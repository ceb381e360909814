#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "gwn/loops.hpp"
#include "gwn/measure.hpp"
#include "gwn/sym_tensor.hpp"

namespace gwn {

namespace detail {
template <typename Scalar>
void require_pair(const AtomicMeasure& m, const SymTensor<Scalar>& f, const SymTensor<Scalar>& g, const char* what) {
  if (f.degree() != g.degree()) throw ContractViolation(std::string(what) + ": degree mismatch");
  if (f.atoms() != m.atoms() || g.atoms() != m.atoms())
    throw DimensionError(std::string(what) + ": atom count mismatch");
}
}  // namespace detail

// Loop-partition inner product on degree-n kernels: sum over set partitions
// (weighted by their cycle counts) of the diagonal integral of conj(f) g.
template <typename Scalar>
Scalar ext_inner_n(const AtomicMeasure& m, const SymTensor<Scalar>& f, const SymTensor<Scalar>& g) {
  detail::require_pair(m, f, g, "ext_inner_n");
  const int n = f.degree();
  if (n == 0) return Eigen::numext::conj(f[0]) * g[0];
  const auto h = f.values().conjugate().cwiseProduct(g.values()).eval();
  const auto& w = m.weights();
  const int atoms = m.atoms();
  const auto& space = f.space();

  Scalar total(0);
  std::array<int, 32> j{}, buf{};
  for (const auto& sig : block_signatures(n)) {
    const int k = static_cast<int>(sig.sizes.size());
    std::fill(j.begin(), j.begin() + k, 0);
    Scalar partial(0);
    while (true) {
      double weight = 1.0;
      int len = 0;
      for (int r = 0; r < k; ++r) {
        weight *= w[j[r]];
        for (int c = 0; c < sig.sizes[r]; ++c) buf[len++] = j[r];
      }
      std::sort(buf.begin(), buf.begin() + len);
      partial += Scalar(weight) * h[space.rank_sorted({buf.data(), std::size_t(len)})];
      int r = k - 1;
      while (r >= 0 && ++j[r] == atoms) j[r--] = 0;
      if (r < 0) break;
    }
    total += Scalar(static_cast<double>(sig.multiplicity)) * partial;
  }
  return total;
}

// sum_n n! ext_inner_n, missing degrees treated as zero.
template <typename Scalar>
Scalar ext_inner(const AtomicMeasure& m, const FockVector<Scalar>& f, const FockVector<Scalar>& g) {
  if (f.atoms() != g.atoms()) throw DimensionError("ext_inner: atom count mismatch");
  const int N = std::min(f.max_degree(), g.max_degree());
  Scalar total(0);
  for (int n = 0; n <= N; ++n) total += Scalar(factorial(n)) * ext_inner_n(m, f[n], g[n]);
  return total;
}

// Plain symmetric Fock inner product: sum over ordered tuples of prod w * conj(f) g.
template <typename Scalar>
Scalar fock_inner_n(const AtomicMeasure& m, const SymTensor<Scalar>& f, const SymTensor<Scalar>& g) {
  detail::require_pair(m, f, g, "fock_inner_n");
  Scalar total(0);
  for (std::int64_t r = 0; r < f.size(); ++r) {
    double weight = f.space().arrangements(r);
    for (int i : f.tuple(r)) weight *= m.weight(i);
    total += Scalar(weight) * Eigen::numext::conj(f[r]) * g[r];
  }
  return total;
}

// True iff every coefficient at a multiset with a repeated atom is within tol of zero.
template <typename Scalar>
bool is_off_diagonal(const SymTensor<Scalar>& f, double tol) {
  for (std::int64_t r = 0; r < f.size(); ++r) {
    const auto t = f.tuple(r);
    const bool repeated = std::adjacent_find(t.begin(), t.end()) != t.end();
    if (repeated && std::abs(f[r]) > tol) return false;
  }
  return true;
}

}  // namespace gwn
