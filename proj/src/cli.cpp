#include "gwn/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gwn/field_ops.hpp"
#include "gwn/io.hpp"
#include "gwn/laguerre.hpp"
#include "gwn/loops.hpp"
#include "gwn/verify.hpp"
#include "gwn/wick.hpp"

namespace gwn {

namespace {

// Shortest round-trip decimal form, so CSV output is stable and exact.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Emitted {
  std::string text;
  bool pass = true;
};

// Align comma-separated rows into columns.
std::string pretty_csv(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> width;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], cells[c].size());
    }
    rows.push_back(std::move(cells));
  }
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      out += r[c];
      if (c + 1 < r.size()) out += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

Emitted table(std::string csv, bool pass, bool pretty) { return {pretty ? pretty_csv(csv) : std::move(csv), pass}; }

Emitted cmd_loops(int n, bool pretty) {
  if (n < 1 || n > 10) throw CLI::ValidationError("--n", "loops needs 1 <= n <= 10");
  std::string csv = "index,blocks,multiplicity,running_sum\n";
  std::int64_t running = 0;
  int index = 0;
  for (const auto& p : enumerate_partitions(n)) {
    running += p.multiplicity;
    csv += std::to_string(index++) + "," + format_blocks(p) + "," + std::to_string(p.multiplicity) + "," +
           std::to_string(running) + "\n";
  }
  csv += "total,," + std::to_string(running) + "," + std::to_string(running) + "\n";
  return table(std::move(csv), static_cast<double>(running) == factorial(n), pretty);
}

Emitted cmd_jacobi(double sigma, int n, bool pretty) {
  if (!(sigma > 0.0)) throw CLI::ValidationError("--sigma", "jacobi needs sigma > 0");
  if (n < 0 || n > 12) throw CLI::ValidationError("--n", "jacobi needs 0 <= n <= 12");
  const auto jc = jacobi_coefficients(sigma, n);
  const auto rep = jacobi_action_check(AtomicMeasure::single_atom(sigma), TestFunction::Ones(1), n);
  std::string csv = "n,alpha_n,beta_n,c_n,c_n_from_extnorm,abs_err\n";
  bool pass = rep.max_action_deviation <= 1e-10;
  for (int k = 0; k <= n; ++k) {
    const double err = std::abs(jc.norms[k] - rep.c_from_extnorm[k]);
    pass = pass && err <= 1e-10 * std::max(1.0, jc.norms[k]);
    csv += std::to_string(k) + "," + num(jc.alphas[k]) + "," + num(jc.betas[k]) + "," + num(jc.norms[k]) + "," +
           num(rep.c_from_extnorm[k]) + "," + num(err) + "\n";
  }
  return table(std::move(csv), pass, pretty);
}

// Row k: ascending monomial coefficients of the k-th orthonormal polynomial.
Emitted cmd_laguerre(double sigma, int n, bool pretty) {
  if (!(sigma > 0.0)) throw CLI::ValidationError("--sigma", "laguerre needs sigma > 0");
  if (n < 0 || n > 20) throw CLI::ValidationError("--n", "laguerre needs 0 <= n <= 20");
  const auto sys = laguerre_system(sigma, n);
  std::string csv = "n";
  for (int k = 0; k <= n; ++k) csv += ",s^" + std::to_string(k);
  csv += "\n";
  bool pass = true;
  for (int k = 0; k <= n; ++k) {
    csv += std::to_string(k);
    for (int j = 0; j <= n; ++j) csv += "," + num(sys.coefficients(k, j));
    csv += "\n";
    for (double s : {0.0, 0.5, 2.0, 7.0}) {
      const double ref = (k % 2 ? -1.0 : 1.0) * normalized_laguerre(k, sigma - 1.0, s);
      pass = pass && std::abs(sys.evaluate(k, s) - ref) <= 1e-8 * std::max(1.0, std::abs(ref));
    }
  }
  return table(std::move(csv), pass, pretty);
}

Emitted cmd_stransform(const std::string& functional_path, const std::vector<double>& theta,
                       const std::string& measure_path, bool pretty) {
  const auto m = AtomicMeasure::from_json_file(measure_path);
  const auto p = functional_from_file(functional_path);
  const TestFunction th = Eigen::Map<const Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
  require_length(m, th, "stransform --theta");
  const double v = s_transform(to_basis(p, Basis::GammaWick, m), th, m);
  if (pretty) return {"S[F](theta) = " + num(v) + "\n", true};
  nlohmann::ordered_json j;
  j["basis"] = basis_name(p.basis);
  j["degree"] = p.degree();
  j["theta"] = theta;
  j["value"] = v;
  return {j.dump(2) + "\n", true};
}

Emitted emit_reports(const std::vector<RunReport>& rs, std::uint64_t seed, bool single, bool pretty) {
  bool pass = true;
  for (const auto& r : rs) pass = pass && r.pass();
  if (pretty) return {reports_pretty(rs), pass};
  return {single ? report_json(rs.front()) : reports_json(rs, seed), pass};
}

void write(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gamma white-noise calculus: tables, samplers and verification suites", "gwn"};
  app.require_subcommand(1);

  std::string out_path, measure_path, functional_path, suite, positional;
  bool pretty = false;
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;
  int n = 4, threads = 0;
  double sigma = 1.0, se_mult = 4.0;
  std::vector<double> theta;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write output to PATH instead of stdout");
    sub->add_flag("--pretty", pretty, "Human-readable table instead of JSON/CSV");
  };
  auto add_seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--samples", samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
    sub->add_option("--se-mult", se_mult, "Standard-error multiplier for Monte Carlo cases")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "Worker threads (0: all cores); results do not depend on it")
        ->check(CLI::NonNegativeNumber);
  };

  auto* loops = app.add_subcommand("loops", "Set-partition census with multiplicities (CSV)");
  loops->add_option("--n", n, "Number of points (1..10)");
  add_output(loops);

  auto* jacobi = app.add_subcommand("jacobi", "Jacobi coefficients and Fock norms (CSV)");
  jacobi->add_option("--sigma", sigma, "Mass of the set");
  jacobi->add_option("--n", n, "Largest degree");
  add_output(jacobi);

  auto* laguerre = app.add_subcommand("laguerre", "Orthonormal polynomial coefficients of Gamma(sigma) (CSV)");
  laguerre->add_option("--sigma", sigma, "Shape parameter");
  laguerre->add_option("--n", n, "Largest degree");
  add_output(laguerre);

  auto* strans = app.add_subcommand("stransform", "S-transform of a functional at theta");
  strans->add_option("--functional", functional_path, "Functional JSON file")->required()->check(CLI::ExistingFile);
  strans->add_option("--theta", theta, "Comma-separated theta values")->required()->delimiter(',');
  strans->add_option("--measure", measure_path, "Measure JSON file")->required()->check(CLI::ExistingFile);
  add_output(strans);

  auto* mc = app.add_subcommand("mc", "Monte Carlo suite against a given measure (JSON)");
  mc->add_option("--suite", suite, "laplace | gram | chaos | adjoint")
      ->required()
      ->check(CLI::IsMember({"laplace", "gram", "chaos", "adjoint"}));
  mc->add_option("--measure", measure_path, "Measure JSON file")->required()->check(CLI::ExistingFile);
  add_seeded(mc);
  add_output(mc);

  auto* verify = app.add_subcommand("verify", "Run one verification suite, or all (JSON)");
  verify->add_option("target", positional, "'all' to run every suite")->check(CLI::IsMember({"all"}));
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", suite, "Suite name or 'all'")->check(CLI::IsMember(suite_choices));
  verify->add_option("--measure", measure_path, "Measure JSON for the Monte Carlo suites")->check(CLI::ExistingFile);
  add_seeded(verify);
  add_output(verify);

  auto* all = app.add_subcommand("all", "Run every verification suite (JSON)");
  all->add_option("--measure", measure_path, "Measure JSON for the Monte Carlo suites")->check(CLI::ExistingFile);
  add_seeded(all);
  add_output(all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "gwn: " << e.what() << "\nrun 'gwn --help' for usage\n";
    return kExitUsage;
  }

  try {
    Emitted result;
    if (app.got_subcommand(loops)) {
      result = cmd_loops(n, pretty);
    } else if (app.got_subcommand(jacobi)) {
      result = cmd_jacobi(sigma, n, pretty);
    } else if (app.got_subcommand(laguerre)) {
      result = cmd_laguerre(sigma, n, pretty);
    } else if (app.got_subcommand(strans)) {
      result = cmd_stransform(functional_path, theta, measure_path, pretty);
    } else {
      VerifyOptions vo;
      vo.seed = seed;
      vo.samples = samples;
      vo.threads = threads;
      if (!measure_path.empty()) vo.measure = AtomicMeasure::from_json_file(measure_path);
      if (mc->count("--se-mult") + verify->count("--se-mult") + all->count("--se-mult") > 0) vo.se_mult = se_mult;

      if (app.got_subcommand(mc)) {
        result = emit_reports({run_suite("mc_" + suite, vo)}, seed, true, pretty);
      } else {
        const bool everything = app.got_subcommand(all) || positional == "all" || suite == "all";
        if (!everything && suite.empty()) throw CLI::ValidationError("verify", "give --suite NAME or 'all'");
        if (!positional.empty() && !suite.empty() && suite != "all")
          throw CLI::ValidationError("verify", "give either --suite NAME or 'all', not both");
        result = everything ? emit_reports(run_all(vo), seed, false, pretty)
                            : emit_reports({run_suite(suite, vo)}, seed, true, pretty);
      }
    }
    write(out_path, result.text, out);
    return result.pass ? kExitPass : kExitFail;
  } catch (const CLI::ValidationError& e) {
    err << "gwn: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "gwn: malformed JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {  // dimension errors in user input
    err << "gwn: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {  // bad weights, masses or parameters
    err << "gwn: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "gwn: error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace gwn
