#include <doctest.h>

#include <cmath>

#include "gwn/ext_fock.hpp"
#include "gwn/sampling.hpp"
#include "support.hpp"

using namespace gwn;

namespace {
SamplerConfig config(std::uint64_t seed, std::int64_t n, SamplerMode mode = SamplerMode::PerAtomGamma) {
  SamplerConfig c;
  c.seed = seed;
  c.n_samples = n;
  c.mode = mode;
  return c;
}

std::vector<OmegaSample> draw(const AtomicMeasure& m, const SamplerConfig& cfg) {
  std::vector<OmegaSample> out;
  for (std::int64_t i = 0; i < cfg.n_samples; ++i) {
    auto rng = sample_stream(cfg.seed, i);
    out.push_back(sample_omega(m, cfg, rng));
  }
  return out;
}
}  // namespace

TEST_CASE("streams are reproducible and distinct") {
  auto a = sample_stream(42, 7), b = sample_stream(42, 7), c = sample_stream(42, 8), d = sample_stream(43, 7);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  SplitMix64 u(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    CHECK((v >= 0.0 && v < 1.0));
  }
}

TEST_CASE("config validation") {
  SamplerConfig c;
  c.n_samples = 0;
  CHECK_THROWS_AS(c.validate(), ContractViolation);
  c.n_samples = 10;
  c.mode = SamplerMode::CompoundPoisson;
  c.cp_truncation = 1.5;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("estimate_from: known values") {
  const auto e = estimate_from({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == 2.5);
  CHECK(e.n == 4);
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  const std::vector<double> xs(1000, 0.1);
  CHECK(pairwise_sum(xs.data(), xs.size()) == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("per-atom Gamma marginals: mean, variance, exponential tail") {
  Eigen::VectorXd w(3);
  w << 0.4, 1.0, 2.5;
  const AtomicMeasure m(w);
  for (auto mode : {SamplerMode::PerAtomGamma, SamplerMode::CompoundPoisson}) {
    const auto samples = draw(m, config(5, 40000, mode));
    for (int i = 0; i < 3; ++i) {
      std::vector<double> s, v, tail;
      for (const auto& om : samples) {
        s.push_back(om.mass(i));
        v.push_back((om.mass(i) - w[i]) * (om.mass(i) - w[i]));
        tail.push_back(om.mass(i) > 1.0 ? 1.0 : 0.0);
        CHECK(om.mass(i) >= 0.0);
      }
      const auto es = estimate_from(s), ev = estimate_from(v);
      CHECK(std::abs(es.mean - w[i]) <= 4 * es.std_error);
      CHECK(std::abs(ev.mean - w[i]) <= 4 * ev.std_error);
      if (i == 1) {
        const auto et = estimate_from(tail);
        CHECK(std::abs(et.mean - std::exp(-1.0)) <= 3 * et.std_error);
      }
    }
    // independence of distinct atoms
    std::vector<double> cov;
    for (const auto& om : samples) cov.push_back((om.mass(0) - w[0]) * (om.mass(2) - w[2]));
    const auto ec = estimate_from(cov);
    CHECK(std::abs(ec.mean) <= 4 * ec.std_error);
  }
}

TEST_CASE("compound Poisson configurations aggregate to the masses") {
  const auto m = AtomicMeasure::single_atom(1.5);
  auto cfg = config(9, 1, SamplerMode::CompoundPoisson);
  auto rng = sample_stream(9, 0);
  const auto conf = sample_configuration(m, cfg, rng);
  REQUIRE(conf.jumps.size() == 1);
  double total = 0.0;
  for (double u : conf.jumps[0]) {
    CHECK(u >= cfg.cp_truncation);
    total += u;
  }
  CHECK(conf.aggregate().mass(0) == doctest::Approx(total).epsilon(1e-15));
  auto rng2 = sample_stream(9, 0);
  CHECK(sample_omega(m, cfg, rng2).mass(0) == doctest::Approx(total).epsilon(1e-15));
}

TEST_CASE("mc_laplace: frozen examples") {
  test::Rng rng(1);
  const auto m = test::random_measure(rng, 3);
  const auto zero = mc_laplace(m, TestFunction::Zero(3), config(1, 100));
  CHECK(zero.mean == 1.0);
  CHECK(zero.std_error == 0.0);
  CHECK(laplace_target(AtomicMeasure::single_atom(1.0), TestFunction::Constant(1, 0.5)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(mc_laplace(m, TestFunction::Constant(3, 1.0), config(1, 10)), DomainError);

  const auto phi = test::random_vec(rng, 3, -0.3, 0.3);
  const auto a = mc_laplace(m, phi, config(2, 50000));
  CHECK(std::abs(a.mean - laplace_target(m, phi)) <= 3 * a.std_error);
  const auto b = mc_laplace(m, phi, config(3, 50000, SamplerMode::CompoundPoisson));
  CHECK(std::abs(a.mean - b.mean) <= 4 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("results are bit-identical regardless of thread count") {
  test::Rng rng(2);
  const auto m = test::random_measure(rng, 2);
  const auto phi = test::random_vec(rng, 2, -0.2, 0.2);
  auto c1 = config(77, 3001), c4 = config(77, 3001);
  c1.threads = 1;
  c4.threads = 4;
  const auto a = mc_laplace(m, phi, c1), b = mc_laplace(m, phi, c4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("mc_chaos_gram: unitarity and orthogonality") {
  test::Rng rng(3);
  Eigen::VectorXd w(2);
  w << 0.8, 1.3;
  const AtomicMeasure m(w);
  std::vector<Tensor> f, g;
  for (int n = 0; n <= 3; ++n) {
    f.push_back(n == 0 ? Tensor::constant(2, 1.0) : test::random_tensor(rng, 2, n));
    g.push_back(n == 0 ? Tensor::constant(2, 1.0) : test::random_tensor(rng, 2, n));
  }
  const auto gram = mc_chaos_gram(m, f, g, config(11, 30000), 3);
  REQUIRE(gram.size() == 16);
  for (const auto& e : gram) {
    if (e.n == 0 && e.k == 0) {
      CHECK(e.estimate.mean == 1.0);
      CHECK(e.target == 1.0);
    }
    if (e.n != e.k) CHECK(e.target == 0.0);
    if (e.n == e.k) CHECK(e.target == doctest::Approx(factorial(e.n) * ext_inner_n(m, f[e.n], g[e.n])));
    CHECK(std::abs(e.estimate.mean - e.target) <= 4 * e.estimate.std_error + 1e-12);
  }

  const double sigma = 1.7;
  const auto one = AtomicMeasure::single_atom(sigma);
  const std::vector<Tensor> chi{Tensor::constant(1, 0.0), rank_one(TestFunction::Ones(1), 1)};
  const auto g1 = mc_chaos_gram(one, chi, chi, config(12, 20000), 1);
  CHECK(g1[3].target == doctest::Approx(sigma));
  CHECK(std::abs(g1[3].estimate.mean - sigma) <= 4 * g1[3].estimate.std_error);
}

TEST_CASE("multiple_integral_identity: frozen examples") {
  test::Rng rng(4);
  Eigen::VectorXd w(4);
  w << 0.5, 1.2, 0.9, 2.0;
  const AtomicMeasure m(w);
  TestFunction a(4), b(4), c(4);
  a << 1, 0, 0, 0;
  b << 0, 1, 1, 0;
  c << 0, 0, 0, 1;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd s(4);
    for (int i = 0; i < 4; ++i) s[i] = test::uniform(rng, 0, 4);
    const OmegaSample om(s);
    const auto r1 = multiple_integral_identity(m, {a}, om);
    CHECK(r1.lhs == doctest::Approx(om.pair(a) - integrate(m, a)));
    CHECK(std::abs(r1.lhs - r1.rhs) <= 1e-12);
    const auto r2 = multiple_integral_identity(m, {a, b}, om);
    CHECK(std::abs(r2.lhs - r2.rhs) <= 1e-10);
    const auto r3 = multiple_integral_identity(m, {a, b, c}, om);
    CHECK(std::abs(r3.lhs - r3.rhs) <= 1e-10);
  }
  const OmegaSample om(Eigen::VectorXd::Ones(4));
  CHECK_THROWS_AS(multiple_integral_identity(m, {a, a}, om), ContractViolation);
  TestFunction half(4);
  half << 0.5, 0, 0, 0;
  CHECK_THROWS_AS(multiple_integral_identity(m, {half}, om), ContractViolation);
}

TEST_CASE("chaos_projection_check: frozen examples") {
  test::Rng rng(5);
  const auto m = test::random_measure(rng, 2);
  const auto g2 = test::random_tensor(rng, 2, 2);
  const auto zero = chaos_projection_check(m, Tensor(2, 2), g2, config(1, 500));
  CHECK(zero.mean == 0.0);
  const auto f1 = test::random_tensor(rng, 2, 1), g1 = test::random_tensor(rng, 2, 1);
  const auto e1 = chaos_projection_check(m, f1, g1, config(2, 20000));
  CHECK(std::abs(e1.mean) <= 4 * e1.std_error);
  const auto f2 = test::random_tensor(rng, 2, 2);
  const auto e2 = chaos_projection_check(m, f2, g2, config(3, 20000));
  CHECK(std::abs(e2.mean) <= 4 * e2.std_error);
}
