#pragma once

#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "gwn/measure.hpp"
#include "gwn/sym_tensor.hpp"
#include "gwn/wick.hpp"

namespace gwn {

// SplitMix64; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state = 0) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Independent stream for sample `index` under `seed`.
SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index);

enum class SamplerMode { PerAtomGamma, CompoundPoisson };

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::int64_t n_samples = 1;
  SamplerMode mode = SamplerMode::PerAtomGamma;
  double cp_truncation = 1e-6;  // small-jump cutoff (CompoundPoisson)
  int threads = 0;              // 0: hardware concurrency

  void validate() const;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
};

// Sample mean and std error; sums are pairwise so the result does not depend on threading.
MCEstimate estimate_from(const std::vector<double>& values);
double pairwise_sum(const double* x, std::size_t n);

// Individual jumps per atom (CompoundPoisson) or one jump per atom (PerAtomGamma).
struct JumpConfiguration {
  std::vector<std::vector<double>> jumps;
  OmegaSample aggregate() const;
};

OmegaSample sample_omega(const AtomicMeasure& m, const SamplerConfig& cfg, SplitMix64& rng);
JumpConfiguration sample_configuration(const AtomicMeasure& m, const SamplerConfig& cfg, SplitMix64& rng);

// Run body(index, stream) for index in [0, n) over worker threads; body writes its own slot.
template <typename Body>
void parallel_samples(std::int64_t n, std::uint64_t seed, int threads, Body&& body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, static_cast<int>(std::min<std::int64_t>(workers, n)));
  auto run = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      SplitMix64 rng = sample_stream(seed, static_cast<std::uint64_t>(i));
      body(i, rng);
    }
  };
  if (workers == 1) {
    run(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    const std::int64_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo < hi) pool.emplace_back(run, lo, hi);
  }
  for (auto& th : pool) th.join();
}

// exp(-sum_i w_i log(1 - phi_i))
double laplace_target(const AtomicMeasure& m, const TestFunction& phi);
MCEstimate mc_laplace(const AtomicMeasure& m, const TestFunction& phi, const SamplerConfig& cfg);

struct GramEntry {
  int n = 0, k = 0;
  MCEstimate estimate;
  double target = 0.0;
};

// E[(I f_n)(I g_k)] for the families f_0..f_N, g_0..g_N; target delta_{nk} n! ext_inner_n(f_n, g_n).
std::vector<GramEntry> mc_chaos_gram(const AtomicMeasure& m, const std::vector<Tensor>& f, const std::vector<Tensor>& g,
                                     const SamplerConfig& cfg, int N_wick);

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// prod_i (<omega, chi_i> - sigma(Delta_i)) against the Wick evaluation of ⊗̂_i chi_i.
IdentityPair multiple_integral_identity(const AtomicMeasure& m, const std::vector<TestFunction>& indicators,
                                        const OmegaSample& w);

// E[(<omega^n, f> - <:omega^n:, f>) <:omega^n:, g>], target 0.
MCEstimate chaos_projection_check(const AtomicMeasure& m, const Tensor& f, const Tensor& g, const SamplerConfig& cfg);

}  // namespace gwn
