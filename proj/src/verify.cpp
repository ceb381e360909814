#include "gwn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "gwn/calculus.hpp"
#include "gwn/field_ops.hpp"
#include "gwn/laguerre.hpp"
#include "gwn/loops.hpp"
#include "gwn/random_inputs.hpp"
#include "gwn/sampling.hpp"
#include "gwn/wick.hpp"

namespace gwn {

namespace {

constexpr int kRandomCases = 100;

double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

void worst(double& acc, double v) { acc = std::isnan(v) ? v : std::max(acc, v); }

// ---- exact / algebraic suites ----

void suite_loops(RunReport& r, const VerifyOptions&) {
  for (int n = 1; n <= 10; ++n) {
    double sum = 0.0;
    for (const auto& p : enumerate_partitions(n)) sum += static_cast<double>(p.multiplicity);
    r.add(CaseResult::compare("census n=" + std::to_string(n), factorial(n), sum, 0.0));
  }
}

void suite_adjoint(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "adjoint");
  double adj = 0.0, herm = 0.0, neut = 0.0, comm = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int atoms = rnd::uniform_int(g, 1, 3), N = rnd::uniform_int(g, 0, 4);
    const auto m = rnd::measure(g, atoms);
    const auto xi = rnd::vec(g, atoms), xi2 = rnd::vec(g, atoms);
    const auto f = rnd::fock(g, atoms, N), h = rnd::fock(g, atoms, N + 1);

    const auto cf = create(xi, f);
    const double scale = std::sqrt(ext_inner(m, cf, cf) * ext_inner(m, h, h)) + 1e-300;
    const double l = ext_inner(m, cf, h);
    const double rr = ext_inner(m, f, annihilate1(xi, h, m) + annihilate2(xi, h));
    worst(adj, std::abs(l - rr) / scale);

    const double hl = ext_inner(m, gamma_field(xi, f, m), h), hr = ext_inner(m, f, gamma_field(xi, h, m));
    worst(herm, std::abs(hl - hr) / (std::abs(hl) + scale));
    const double nl = ext_inner(m, neutral(xi, f), h), nr = ext_inner(m, f, neutral(xi, h));
    worst(neut, std::abs(nl - nr) / (std::abs(nl) + scale));

    const auto ab = gamma_field(xi, gamma_field(xi2, f, m), m), ba = gamma_field(xi2, gamma_field(xi, f, m), m);
    worst(comm, max_abs_difference(ab, ba) / (1.0 + max_abs_coefficient(ab)));
  }
  r.add(CaseResult::bound("creation adjoint to annihilation (500 cases)", adj, 1e-10));
  r.add(CaseResult::bound("neutral operator symmetric (500 cases)", neut, 1e-10));
  r.add(CaseResult::bound("field operator symmetric (500 cases)", herm, 1e-10));
  r.add(CaseResult::bound("field operators commute (500 cases)", comm, 1e-10));
}

void suite_jacobi(RunReport& r, const VerifyOptions&) {
  for (double sigma : {0.5, 1.0, 2.5}) {
    Eigen::VectorXd w(3);
    w << 0.4 * sigma, 1.3, 0.6 * sigma;
    TestFunction delta(3);
    delta << 1, 0, 1;
    const auto rep = jacobi_action_check(AtomicMeasure(w), delta, 8);
    const std::string tag = "sigma=" + std::to_string(sigma).substr(0, 3);
    r.add(CaseResult::bound(tag + " three-term action n<=8", rep.max_action_deviation, 1e-10));
    double norm_err = 0.0;
    for (int n = 0; n <= 8; ++n) {
      const double closed = factorial(n) * rising_factorial(sigma, n);
      worst(norm_err, std::abs(rep.c_from_extnorm[n] * rep.c_from_extnorm[n] - closed) / closed);
    }
    r.add(CaseResult::bound(tag + " c_n^2 = n!(sigma)_n", norm_err, 1e-10));
    r.add(CaseResult::bound(tag + " closed-form coefficients", rep.max_norm_rel_error, 1e-10));
  }
}

void suite_laguerre(RunReport& r, const VerifyOptions&) {
  for (double sigma : {0.5, 1.0, 2.5}) {
    const auto sys = laguerre_system(sigma, 10);
    double dev = 0.0;
    for (int n = 0; n <= 10; ++n)
      for (double s : {0.0, 0.1, 0.5, 0.9, 2.0, 3.7, 5.5, 8.0, 12.0}) {
        const double ref = (n % 2 ? -1.0 : 1.0) * normalized_laguerre(n, sigma - 1.0, s);
        worst(dev, std::abs(sys.evaluate(n, s) - ref) / std::max(1.0, std::abs(ref)));
      }
    const std::string tag = "sigma=" + std::to_string(sigma).substr(0, 3);
    r.add(CaseResult::bound(tag + " recurrence = signed normalized Laguerre, n<=10", dev, 1e-8));

    const auto q = gauss_laguerre(200, sigma - 1.0);
    double orth = 0.0;
    for (int n = 0; n <= 10; ++n)
      for (int k = 0; k <= n; ++k) {
        const double v = q.integrate([&](double s) { return sys.evaluate(n, s) * sys.evaluate(k, s); });
        worst(orth, std::abs(v - (n == k ? 1.0 : 0.0)));
      }
    r.add(CaseResult::bound(tag + " Gauss-Laguerre orthonormality, n<=10", orth, 1e-8));
  }
}

void suite_wick(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "wick");
  double rec = 0.0, fact = 0.0, expo = 0.0, conv = 0.0, eval = 0.0;
  for (int trial = 0; trial < kRandomCases; ++trial) {
    const int atoms = rnd::uniform_int(g, 1, 4);
    const auto m = rnd::measure(g, atoms);
    const auto w = rnd::omega(g, atoms);

    const auto K = wick_kernels(w, m, 6);
    const auto xi = rnd::vec(g, atoms);
    const auto q = wick_pair_rank_one(w, xi, m, 6);
    for (int n = 0; n <= 6; ++n) worst(rec, rel_gap(weighted_pairing(m, K[n], rank_one(xi, n)), q[n]));

    // per-atom factorization: <:omega^n:, ⊗̂_a chi_a^{k_a}> = prod_a (-1)^k k! L_k^{(w_a-1)}(s_a)
    for (std::int64_t rk = 0; rk < K[4].size(); ++rk) {
      std::vector<int> k(atoms, 0);
      for (int i : K[4].tuple(rk)) ++k[i];
      double oracle = 1.0;
      for (int a = 0; a < atoms; ++a)
        oracle *= (k[a] % 2 ? -1.0 : 1.0) * factorial(k[a]) * classical_laguerre(k[a], m.weight(a) - 1.0, w.mass(a));
      double value = K[4][rk];
      for (int a = 0; a < atoms; ++a) value *= std::pow(m.weight(a), k[a]);
      worst(fact, rel_gap(value, oracle));
    }

    const auto phi = rnd::vec(g, atoms, -0.1, 0.1);
    const auto e = wick_exp(w, phi, m, 12);
    worst(expo, std::abs(e.truncated_series - e.closed_form));

    const auto p = rnd::poly(g, Basis::Monomial, atoms, 4);
    const auto back = wick_to_monomial(monomial_to_wick(p, m), m);
    worst(conv, max_abs_difference(back.kernels, p.kernels) / std::max(1.0, max_abs_coefficient(p.kernels)));
    worst(eval, rel_gap(evaluate(p, w, m), evaluate(monomial_to_wick(p, m), w, m)));
  }
  r.add(CaseResult::bound("kernel recurrence vs rank-one recurrence, n<=6", rec, 1e-10));
  r.add(CaseResult::bound("kernels vs per-atom Laguerre factorization, n=4", fact, 1e-10));
  r.add(CaseResult::bound("Wick exponential series vs closed form, N=12", expo, 1e-9));
  r.add(CaseResult::bound("monomial -> Wick -> monomial round trip", conv, 1e-10));
  r.add(CaseResult::bound("evaluation agrees across bases", eval, 1e-10));
}

void suite_multiple_integral(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "multiple_integral");
  const auto m = rnd::measure(g, 4);
  // disjoint indicators of {0}, {1,2}, {3}
  std::vector<TestFunction> chi(3, TestFunction::Zero(4));
  chi[0][0] = 1;
  chi[1][1] = chi[1][2] = 1;
  chi[2][3] = 1;
  for (int n = 1; n <= 3; ++n) {
    double dev = 0.0;
    const std::vector<TestFunction> ind(chi.begin(), chi.begin() + n);
    for (int trial = 0; trial < kRandomCases; ++trial) {
      const auto rep = multiple_integral_identity(m, ind, rnd::omega(g, 4, 4.0));
      worst(dev, rel_gap(rep.lhs, rep.rhs));
    }
    r.add(CaseResult::bound("n=" + std::to_string(n) + " disjoint indicators, 100 samples", dev, 1e-10));
  }
}

// ---- functional calculus suites: 100 random (p, xi, theta, omega) ----

struct CalcCase {
  AtomicMeasure m;
  PolyFunctional p;
  TestFunction xi, theta;
  OmegaSample w;
  int atom;
};

CalcCase calc_case(SplitMix64& g, int trial, int degree = 3) {
  const int atoms = rnd::uniform_int(g, 1, 4);
  auto m = rnd::measure(g, atoms);
  auto p = rnd::poly(g, trial % 2 ? Basis::Monomial : Basis::GammaWick, atoms, degree);
  auto xi = rnd::vec(g, atoms);
  auto theta = rnd::vec(g, atoms);
  auto w = rnd::omega(g, atoms);
  const int atom = rnd::uniform_int(g, 0, atoms - 1);
  return CalcCase{std::move(m), std::move(p), std::move(xi), std::move(theta), std::move(w), atom};
}

void suite_theorem5(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "theorem5");
  double coord = 0.0, pairing = 0.0;
  for (int t = 0; t < kRandomCases; ++t) {
    const auto c = calc_case(g, t);
    worst(coord, theorem5_check(c.p, c.theta, c.atom, c.m).deviation);
    worst(pairing, theorem5_pairing_check(c.p, c.theta, c.xi, c.m).deviation);
  }
  r.add(CaseResult::bound("S-transform of coordinate multiplication", coord, 1e-8));
  r.add(CaseResult::bound("S-transform of pairing multiplication", pairing, 1e-8));
}

void suite_theorem6(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "theorem6");
  for (int N = 0; N <= 6; ++N) {
    double dev = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto c = calc_case(g, t, N);
      for (int i = 0; i < c.m.atoms(); ++i) worst(dev, theorem6_check(c.p, i, c.w, c.m).deviation);
    }
    r.add(CaseResult::bound("quadrature = algebraic del, degree " + std::to_string(N), dev, 1e-9));
  }
  double a1 = 0.0;
  for (int t = 0; t < kRandomCases; ++t) {
    const auto c = calc_case(g, t, 4);
    worst(a1, theorem6_annihilation_check(c.p, c.xi, c.w, c.m).deviation);
  }
  r.add(CaseResult::bound("annihilation integral = Fock-side a1-", a1, 1e-10));
}

void suite_series(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "series");
  double d1 = 0.0, d2 = 0.0, cm = 0.0;
  for (int N = 0; N <= 6; ++N)
    for (int t = 0; t < 10; ++t) {
      const auto c = calc_case(g, t, N);
      const auto rep = series_identities_check(c.p, c.atom, c.m);
      worst(d1, rep.del_as_nabla_series);
      worst(d2, rep.nabla_as_del_series);
      worst(cm, rep.commutation);
    }
  r.add(CaseResult::bound("del = sum nabla^n, degree <= 6", d1, 1e-10));
  r.add(CaseResult::bound("nabla = sum (-1)^(n+1) del^n, degree <= 6", d2, 1e-10));
  r.add(CaseResult::bound("nabla_x del_y = del_y nabla_x", cm, 1e-10));
}

template <typename Check>
void pointwise_suite(RunReport& r, const VerifyOptions& o, const std::string& label, const std::string& name,
                     double tol, Check check) {
  auto g = rnd::stream(o.seed, label);
  double dev = 0.0;
  for (int t = 0; t < kRandomCases; ++t) worst(dev, check(calc_case(g, t)).deviation);
  r.add(CaseResult::bound(name, dev, tol));
}

void suite_theorem7(RunReport& r, const VerifyOptions& o) {
  pointwise_suite(r, o, "theorem7", "creation as omega-side operator, 100 samples", 1e-8,
                  [](const CalcCase& c) { return theorem7_check(c.p, c.xi, c.w, c.m); });
}

void suite_theorem8(RunReport& r, const VerifyOptions& o) {
  pointwise_suite(r, o, "theorem8", "neutral operator as omega-side operator, 100 samples", 1e-8,
                  [](const CalcCase& c) { return theorem8_check(c.p, c.xi, c.w, c.m); });
}

void suite_theorem9(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "theorem9");
  double nab = 0.0, shift = 0.0, equiv = 0.0, printed = 0.0;
  for (int t = 0; t < kRandomCases; ++t) {
    const auto c = calc_case(g, t);
    const auto rep = theorem9_check(c.p, c.xi, c.w, c.m);
    worst(nab, rep.nabla_form.deviation);
    worst(shift, rep.shift_form.deviation);
    worst(equiv, rel_gap(rep.nabla_form.rhs, rep.shift_form.rhs));
    worst(printed, rep.printed_sign_deviation);
  }
  r.add(CaseResult::bound("a2- gradient-integral form, 100 samples", nab, 1e-8));
  r.add(CaseResult::bound("a2- shifted-value form (sign-corrected), 100 samples", shift, 1e-8));
  r.add(CaseResult::bound("the two forms agree", equiv, 1e-8));
  r.info.emplace_back("shifted_form_printed_sign_max_abs_deviation", printed);
}

void suite_multiplication(RunReport& r, const VerifyOptions& o) {
  pointwise_suite(r, o, "multiplication", "sum_x w xi omega(x)-multiplication = <omega,xi> p, 100 samples", 1e-10,
                  [](const CalcCase& c) { return multiplication_check(c.p, c.xi, c.w, c.m); });
}

void suite_reassembly(RunReport& r, const VerifyOptions& o) {
  pointwise_suite(r, o, "reassembly", "a+ + 2a0 + <xi> + a1- + a2- = <omega,xi>, 100 samples", 1e-8,
                  [](const CalcCase& c) { return reassembly_check(c.p, c.xi, c.w, c.m); });
}

// ---- Monte Carlo suites ----

AtomicMeasure mc_measure(const VerifyOptions& o, SplitMix64& g) {
  return o.measure ? *o.measure : rnd::measure(g, 3, 1.0, 2.0);
}

SamplerConfig mc_config(const VerifyOptions& o, std::string_view label, SamplerMode mode) {
  SamplerConfig cfg;
  cfg.seed = rnd::stream(o.seed, label)();
  cfg.n_samples = o.samples;
  cfg.mode = mode;
  cfg.threads = o.threads;
  return cfg;
}

void suite_mc_laplace(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "mc_laplace");
  const auto m = mc_measure(o, g);
  const auto phi = rnd::vec(g, m.atoms(), -0.3, 0.3);
  const double target = laplace_target(m, phi);
  const double k = o.se_mult.value_or(3.0);
  const auto a = mc_laplace(m, phi, mc_config(o, "mc_laplace:gamma", SamplerMode::PerAtomGamma));
  const auto b = mc_laplace(m, phi, mc_config(o, "mc_laplace:cp", SamplerMode::CompoundPoisson));
  r.add(CaseResult::monte_carlo("per-atom Gamma sampler", a.mean, target, a.std_error, k));
  r.add(CaseResult::monte_carlo("compound Poisson sampler", b.mean, target, b.std_error, k));
  r.add(CaseResult::monte_carlo("samplers agree", a.mean - b.mean, 0.0, std::hypot(a.std_error, b.std_error),
                                o.se_mult.value_or(4.0)));
}

void suite_mc_gram(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "mc_gram");
  const auto m = mc_measure(o, g);
  const int N = 4;
  std::vector<Tensor> f, h;
  for (int n = 0; n <= N; ++n) {
    f.push_back(rnd::tensor(g, m.atoms(), n));
    h.push_back(rnd::tensor(g, m.atoms(), n));
  }
  const auto gram = mc_chaos_gram(m, f, h, mc_config(o, "mc_gram:sampler", SamplerMode::PerAtomGamma), N);
  for (const auto& e : gram)
    r.add(CaseResult::monte_carlo("E[I(f_" + std::to_string(e.n) + ") I(g_" + std::to_string(e.k) + ")]",
                                  e.estimate.mean, e.target, e.estimate.std_error, o.se_mult.value_or(4.0)));
}

void suite_mc_chaos(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "mc_chaos");
  const auto m = mc_measure(o, g);
  for (int n = 1; n <= 4; ++n) {
    const auto f = rnd::tensor(g, m.atoms(), n), h = rnd::tensor(g, m.atoms(), n);
    const auto cfg = mc_config(o, "mc_chaos:" + std::to_string(n), SamplerMode::PerAtomGamma);
    const auto e = chaos_projection_check(m, f, h, cfg);
    r.add(CaseResult::monte_carlo("monomial minus Wick part orthogonal to chaos " + std::to_string(n), e.mean, 0.0,
                                  e.std_error, o.se_mult.value_or(4.0)));
  }
}

void suite_mc_adjoint(RunReport& r, const VerifyOptions& o) {
  auto g = rnd::stream(o.seed, "mc_adjoint");
  const auto m = mc_measure(o, g);
  const auto phi = rnd::poly(g, Basis::Monomial, m.atoms(), 2);
  const auto psi = rnd::poly(g, Basis::Monomial, m.atoms(), 2);
  const auto xi = rnd::vec(g, m.atoms());
  const auto e = mc_a1_adjointness(m, phi, psi, xi, mc_config(o, "mc_adjoint:cp", SamplerMode::CompoundPoisson),
                                   gauss_laguerre(16));
  r.add(CaseResult::monte_carlo("E[(a1+ phi) psi - phi (a1- psi)] over jump configurations", e.mean, 0.0,
                                e.std_error, o.se_mult.value_or(4.0)));
}

using SuiteFn = void (*)(RunReport&, const VerifyOptions&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"adjoint", suite_adjoint},
      {"jacobi", suite_jacobi},
      {"laguerre", suite_laguerre},
      {"loops", suite_loops},
      {"mc_adjoint", suite_mc_adjoint},
      {"mc_chaos", suite_mc_chaos},
      {"mc_gram", suite_mc_gram},
      {"mc_laplace", suite_mc_laplace},
      {"multiple_integral", suite_multiple_integral},
      {"multiplication", suite_multiplication},
      {"reassembly", suite_reassembly},
      {"series", suite_series},
      {"theorem5", suite_theorem5},
      {"theorem6", suite_theorem6},
      {"theorem7", suite_theorem7},
      {"theorem8", suite_theorem8},
      {"theorem9", suite_theorem9},
      {"wick", suite_wick},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

RunReport run_suite(const std::string& name, const VerifyOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ContractViolation("unknown suite: " + name);
  RunReport r;
  r.suite = name;
  r.seed = opts.seed;
  const auto t0 = std::chrono::steady_clock::now();
  it->second(r, opts);
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<RunReport> run_all(const VerifyOptions& opts) {
  std::vector<RunReport> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, opts));
  return out;
}

}  // namespace gwn
