#pragma once

#include <cstdint>
#include <string_view>

#include "gwn/measure.hpp"
#include "gwn/sampling.hpp"
#include "gwn/sym_tensor.hpp"
#include "gwn/wick.hpp"

// Seeded random inputs for the verification suites. Everything draws from SplitMix64
// so a (seed, label) pair fixes the whole case list.
namespace gwn::rnd {

// Stream derived from a seed and a text label (FNV-1a of the label).
inline SplitMix64 stream(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : label) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return sample_stream(seed, h);
}

inline double uniform(SplitMix64& g, double a, double b) { return a + (b - a) * g.uniform(); }
inline int uniform_int(SplitMix64& g, int a, int b) {
  return a + static_cast<int>(g() % static_cast<std::uint64_t>(b - a + 1));
}

inline AtomicMeasure measure(SplitMix64& g, int atoms, double lo = 0.3, double hi = 2.0) {
  Eigen::VectorXd w(atoms);
  for (int i = 0; i < atoms; ++i) w[i] = uniform(g, lo, hi);
  return AtomicMeasure(w);
}

inline TestFunction vec(SplitMix64& g, int atoms, double a = -1.0, double b = 1.0) {
  TestFunction v(atoms);
  for (int i = 0; i < atoms; ++i) v[i] = uniform(g, a, b);
  return v;
}

inline Tensor tensor(SplitMix64& g, int atoms, int degree, double a = -1.0, double b = 1.0) {
  Tensor t(atoms, degree);
  for (std::int64_t r = 0; r < t.size(); ++r) t[r] = uniform(g, a, b);
  return t;
}

inline Fock fock(SplitMix64& g, int atoms, int N) {
  std::vector<Tensor> ks;
  for (int n = 0; n <= N; ++n) ks.push_back(tensor(g, atoms, n));
  return Fock(std::move(ks));
}

inline PolyFunctional poly(SplitMix64& g, Basis b, int atoms, int N) { return PolyFunctional{b, fock(g, atoms, N)}; }

inline OmegaSample omega(SplitMix64& g, int atoms, double hi = 3.0) { return OmegaSample(vec(g, atoms, 0.0, hi)); }

}  // namespace gwn::rnd
