#include "gwn/sampling.hpp"

#include <cmath>
#include <random>

#include "gwn/ext_fock.hpp"

namespace gwn {

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 base(seed);
  const std::uint64_t a = base();
  SplitMix64 mixed(a ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  return SplitMix64(mixed());
}

void SamplerConfig::validate() const {
  if (n_samples < 1) throw ContractViolation("SamplerConfig: n_samples must be >= 1");
  if (mode == SamplerMode::CompoundPoisson && !(cp_truncation > 0.0 && cp_truncation < 1.0))
    throw DomainError("SamplerConfig: cp_truncation must lie in (0, 1)");
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

MCEstimate estimate_from(const std::vector<double>& values) {
  MCEstimate e;
  e.n = static_cast<std::int64_t>(values.size());
  if (values.empty()) return e;
  e.mean = pairwise_sum(values.data(), values.size()) / values.size();
  if (values.size() < 2) {
    e.std_error = std::numeric_limits<double>::infinity();
    return e;
  }
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - e.mean) * (values[i] - e.mean);
  const double var = pairwise_sum(dev.data(), dev.size()) / (values.size() - 1);
  e.std_error = std::sqrt(var / values.size());
  return e;
}

OmegaSample JumpConfiguration::aggregate() const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(jumps.size()));
  for (std::size_t i = 0; i < jumps.size(); ++i)
    for (double u : jumps[i]) s[static_cast<Eigen::Index>(i)] += u;
  return OmegaSample(s);
}

namespace {

double e1(double x) { return -std::expint(-x); }

// One jump from the density proportional to e^{-s}/s on [eps, inf).
double levy_jump(double eps, double mass_small, double mass_large, SplitMix64& rng) {
  const double log_eps = std::log(eps);
  if (rng.uniform() * (mass_small + mass_large) < mass_small) {
    while (true) {  // log-uniform proposal on [eps, 1), accept with e^{-s}
      const double s = std::exp((1.0 - rng.uniform()) * log_eps);
      if (rng.uniform() < std::exp(-s)) return s;
    }
  }
  while (true) {  // 1 + Exp(1) proposal, accept with 1/s
    const double s = 1.0 - std::log1p(-rng.uniform());
    if (rng.uniform() * s < 1.0) return s;
  }
}

}  // namespace

JumpConfiguration sample_configuration(const AtomicMeasure& m, const SamplerConfig& cfg, SplitMix64& rng) {
  cfg.validate();
  JumpConfiguration conf;
  conf.jumps.resize(m.atoms());
  if (cfg.mode == SamplerMode::PerAtomGamma) {
    for (int i = 0; i < m.atoms(); ++i) {
      std::gamma_distribution<double> gamma(m.weight(i), 1.0);
      conf.jumps[i].push_back(gamma(rng));
    }
    return conf;
  }
  const double eps = cfg.cp_truncation;
  const double large = e1(1.0);
  const double small = e1(eps) - large;
  for (int i = 0; i < m.atoms(); ++i) {
    std::poisson_distribution<long> count(m.weight(i) * (small + large));
    const long k = count(rng);
    for (long j = 0; j < k; ++j) conf.jumps[i].push_back(levy_jump(eps, small, large, rng));
  }
  return conf;
}

OmegaSample sample_omega(const AtomicMeasure& m, const SamplerConfig& cfg, SplitMix64& rng) {
  return sample_configuration(m, cfg, rng).aggregate();
}

double laplace_target(const AtomicMeasure& m, const TestFunction& phi) {
  require_length(m, phi, "laplace_target");
  for (Eigen::Index i = 0; i < phi.size(); ++i)
    if (!(phi[i] < 1.0)) throw DomainError("laplace: need phi_i < 1");
  double s = 0.0;
  for (int i = 0; i < m.atoms(); ++i) s -= m.weight(i) * std::log1p(-phi[i]);
  return std::exp(s);
}

MCEstimate mc_laplace(const AtomicMeasure& m, const TestFunction& phi, const SamplerConfig& cfg) {
  laplace_target(m, phi);
  cfg.validate();
  std::vector<double> values(cfg.n_samples);
  parallel_samples(cfg.n_samples, cfg.seed, cfg.threads, [&](std::int64_t i, SplitMix64& rng) {
    values[i] = std::exp(sample_omega(m, cfg, rng).pair(phi));
  });
  return estimate_from(values);
}

std::vector<GramEntry> mc_chaos_gram(const AtomicMeasure& m, const std::vector<Tensor>& f, const std::vector<Tensor>& g,
                                     const SamplerConfig& cfg, int N_wick) {
  cfg.validate();
  if (f.size() != g.size() || f.empty()) throw ContractViolation("mc_chaos_gram: need kernel families of equal length");
  const int N = static_cast<int>(f.size()) - 1;
  if (N > N_wick) throw ContractViolation("mc_chaos_gram: degree exceeds N_wick");
  for (int n = 0; n <= N; ++n) {
    if (f[n].degree() != n || g[n].degree() != n) throw ContractViolation("mc_chaos_gram: entry n must have degree n");
    if (f[n].atoms() != m.atoms() || g[n].atoms() != m.atoms()) throw DimensionError("mc_chaos_gram: atom count");
  }
  const int cells = (N + 1) * (N + 1);
  std::vector<double> values(static_cast<std::size_t>(cfg.n_samples) * cells);
  parallel_samples(cfg.n_samples, cfg.seed, cfg.threads, [&](std::int64_t i, SplitMix64& rng) {
    const auto K = wick_kernels(sample_omega(m, cfg, rng), m, N);
    std::vector<double> a(N + 1), b(N + 1);
    for (int n = 0; n <= N; ++n) {
      a[n] = weighted_pairing(m, K[n], f[n]);
      b[n] = weighted_pairing(m, K[n], g[n]);
    }
    double* row = values.data() + i * cells;
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= N; ++k) row[n * (N + 1) + k] = a[n] * b[k];
  });
  std::vector<GramEntry> out;
  std::vector<double> column(cfg.n_samples);
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= N; ++k) {
      for (std::int64_t i = 0; i < cfg.n_samples; ++i) column[i] = values[i * cells + n * (N + 1) + k];
      GramEntry e;
      e.n = n;
      e.k = k;
      e.estimate = estimate_from(column);
      e.target = n == k ? factorial(n) * ext_inner_n(m, f[n], g[n]) : 0.0;
      out.push_back(e);
    }
  return out;
}

IdentityPair multiple_integral_identity(const AtomicMeasure& m, const std::vector<TestFunction>& indicators,
                                        const OmegaSample& w) {
  for (const auto& chi : indicators) {
    require_length(m, chi, "multiple_integral_identity");
    for (Eigen::Index i = 0; i < chi.size(); ++i)
      if (chi[i] != 0.0 && chi[i] != 1.0) throw ContractViolation("multiple_integral_identity: not a 0/1 indicator");
  }
  for (std::size_t a = 0; a < indicators.size(); ++a)
    for (std::size_t b = a + 1; b < indicators.size(); ++b)
      if (indicators[a].cwiseProduct(indicators[b]).any())
        throw ContractViolation("multiple_integral_identity: indicators must have disjoint supports");

  IdentityPair r;
  r.lhs = 1.0;
  Tensor kernel = Tensor::constant(m.atoms(), 1.0);
  for (const auto& chi : indicators) {
    r.lhs *= w.pair(chi) - integrate(m, chi);
    kernel = sym_product(kernel, rank_one(chi, 1));
  }
  r.rhs = evaluate(PolyFunctional::single(Basis::GammaWick, kernel), w, m);
  return r;
}

MCEstimate chaos_projection_check(const AtomicMeasure& m, const Tensor& f, const Tensor& g, const SamplerConfig& cfg) {
  cfg.validate();
  if (f.degree() != g.degree()) throw ContractViolation("chaos_projection_check: degree mismatch");
  if (f.atoms() != m.atoms() || g.atoms() != m.atoms()) throw DimensionError("chaos_projection_check: atom count");
  const int n = f.degree();
  std::vector<double> values(cfg.n_samples);
  parallel_samples(cfg.n_samples, cfg.seed, cfg.threads, [&](std::int64_t i, SplitMix64& rng) {
    const auto w = sample_omega(m, cfg, rng);
    const auto K = wick_kernels(w, m, n);
    const double mono = full_contraction(f, w.masses());
    values[i] = (mono - weighted_pairing(m, K[n], f)) * weighted_pairing(m, K[n], g);
  });
  return estimate_from(values);
}

}  // namespace gwn
