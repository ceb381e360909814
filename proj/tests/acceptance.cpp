// One pass/fail line per acceptance criterion; exit status is nonzero if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "gwn/field_ops.hpp"
#include "gwn/loops.hpp"
#include "gwn/verify.hpp"
#include "support.hpp"

#ifndef GWN_BINARY
#error "GWN_BINARY must name the gwn executable"
#endif

using namespace gwn;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// All cases of the named suites pass; detail lists the worst deviation/tolerance ratio.
Outcome suites(std::initializer_list<const char*> names, std::int64_t samples = 100000) {
  VerifyOptions o;
  o.seed = kSeed;
  o.samples = samples;
  bool pass = true;
  double ratio = 0.0;
  std::string failed;
  for (const char* n : names) {
    const auto r = run_suite(n, o);
    for (const auto& c : r.cases) {
      if (!c.pass) {
        pass = false;
        failed += " " + std::string(n) + ":" + c.name;
      }
      if (c.tolerance > 0) ratio = std::max(ratio, c.deviation / c.tolerance);
    }
  }
  return {pass, "worst deviation/tolerance " + fmt(ratio) + (failed.empty() ? "" : "; failed:" + failed)};
}

Outcome loop_census() {
  const auto t0 = std::chrono::steady_clock::now();
  bool exact = true;
  for (int n = 1; n <= 10; ++n) {
    std::int64_t sum = 0;
    for (const auto& p : enumerate_partitions(n)) sum += p.multiplicity;
    exact = exact && static_cast<double>(sum) == factorial(n);
  }
  const double t = seconds_since(t0);
  return {exact && t < 1.0, std::string(exact ? "sum = n! for n = 1..10" : "census mismatch") + " in " + fmt(t) + " s"};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  test::Rng rng(kSeed);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6, atoms = test::uniform_int(rng, 1, 3);
    const auto m = test::random_measure(rng, atoms);
    const auto f = test::random_tensor(rng, atoms, n), g = test::random_tensor(rng, atoms, n);
    const double a = ext_inner_n(m, f, g), b = test::permutation_ext_inner_n(m, f, g);
    const double scale = std::sqrt(ext_inner_n(m, f, f) * ext_inner_n(m, g, g));
    worst = std::max(worst, test::rel(a, b, scale));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-12 && t < 30.0, "max rel error " + fmt(worst) + " over 200 pairs in " + fmt(t) + " s"};
}

Outcome rising_factorial_norms() {
  double worst = 0.0;
  for (double sigma : {0.5, 1.0, 2.5}) {
    const auto rep = jacobi_action_check(AtomicMeasure::single_atom(sigma), TestFunction::Ones(1), 8);
    for (int n = 0; n <= 8; ++n) {
      const double closed = factorial(n) * rising_factorial(sigma, n);
      worst = std::max(worst, std::abs(rep.c_from_extnorm[n] * rep.c_from_extnorm[n] - closed) / closed);
    }
  }
  return {worst <= 1e-10, "max rel error of c_n^2 vs n!(sigma)_n " + fmt(worst)};
}

Outcome jacobi_action() {
  double action = 0.0, coeff = 0.0;
  for (double sigma : {0.5, 1.0, 2.5}) {
    Eigen::VectorXd w(2);
    w << 0.3 * sigma, 0.7 * sigma;
    const auto rep = jacobi_action_check(AtomicMeasure(w), TestFunction::Ones(2), 6);
    action = std::max(action, rep.max_action_deviation);
    const auto jc = jacobi_coefficients(sigma, 6);
    for (int n = 0; n <= 6; ++n) {
      coeff = std::max(coeff, std::abs(jc.betas[n] - (2.0 * n + sigma)));
      coeff = std::max(coeff, std::abs(jc.alphas[n] - std::sqrt(n * (n - 1 + sigma))));
    }
  }
  return {action <= 1e-10 && coeff <= 1e-12,
          "action deviation " + fmt(action) + ", coefficient deviation " + fmt(coeff)};
}

// Strip the wall-time lines so only content is compared.
std::string run_binary(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  status = pclose(p);
  std::istringstream in(out);
  std::string kept;
  for (std::string line; std::getline(in, line);)
    if (line.find("\"wall_time_s\"") == std::string::npos) kept += line + "\n";
  return kept;
}

Outcome determinism() {
  const std::string cmd = std::string("\"") + GWN_BINARY + "\" verify all --seed 42";
  int s1 = 0, s2 = 0;
  const auto a = run_binary(cmd, s1);
  const auto b = run_binary(cmd, s2);
  const bool same = !a.empty() && a == b;
  return {same, std::string(same ? "identical" : "different") + " reports (" + std::to_string(a.size()) +
                    " bytes), exit statuses " + std::to_string(s1) + "/" + std::to_string(s2)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"loop census", loop_census},
      {"partition vs permutation oracle", oracle_equivalence},
      {"rising-factorial norms", rising_factorial_norms},
      {"adjointness and commutativity", [] { return suites({"adjoint"}); }},
      {"Jacobi three-term action", jacobi_action},
      {"Laguerre identity and orthonormality", [] { return suites({"laguerre"}); }},
      {"Wick recurrences and exponential", [] { return suites({"wick"}); }},
      {"Monte Carlo unitarity, chaos orthogonality, Laplace",
       [] { return suites({"mc_gram", "mc_chaos", "mc_laplace"}); }},
      {"multiple stochastic integrals", [] { return suites({"multiple_integral"}); }},
      {"difference-operator representation and series", [] { return suites({"theorem6", "series"}); }},
      {"operator reassembly and S-transform identities",
       [] { return suites({"theorem5", "theorem7", "theorem8", "theorem9", "multiplication", "reassembly"}); }},
      {"determinism of verify all", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] criterion %2zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
