#include "gwn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace gwn {

namespace {

using ojson = nlohmann::ordered_json;

// Non-finite numbers are not JSON; keep them visible as strings.
ojson number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

bool within(double deviation, double tolerance) { return deviation <= tolerance; }  // false for NaN

ojson to_json(const RunReport& r) {
  ojson j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["pass"] = r.pass();
  ojson cases = ojson::array();
  for (const auto& c : r.cases) {
    ojson cj;
    cj["name"] = c.name;
    cj["target"] = number(c.target);
    cj["value"] = number(c.value);
    cj["deviation"] = number(c.deviation);
    cj["tolerance"] = number(c.tolerance);
    cj["pass"] = c.pass;
    if (c.estimate) cj["estimate"] = number(*c.estimate);
    if (c.std_error) cj["se"] = number(*c.std_error);
    cases.push_back(std::move(cj));
  }
  j["cases"] = std::move(cases);
  if (!r.info.empty()) {
    ojson info = ojson::object();
    for (const auto& [k, v] : r.info) info[k] = number(v);
    j["info"] = std::move(info);
  }
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

CaseResult CaseResult::compare(std::string name, double target, double value, double tolerance) {
  CaseResult c;
  c.name = std::move(name);
  c.target = target;
  c.value = value;
  c.deviation = std::abs(value - target);
  c.tolerance = tolerance;
  c.pass = within(c.deviation, tolerance);
  return c;
}

CaseResult CaseResult::bound(std::string name, double deviation, double tolerance) {
  CaseResult c = compare(std::move(name), 0.0, deviation, tolerance);
  c.deviation = deviation;
  c.pass = within(deviation, tolerance);
  return c;
}

CaseResult CaseResult::monte_carlo(std::string name, double estimate, double target, double se, double se_mult) {
  // roundoff floor: exact cases (se = 0) still differ from the target by a few ulps
  CaseResult c = compare(std::move(name), target, estimate, se_mult * se + 1e-12 * std::max(1.0, std::abs(target)));
  c.estimate = estimate;
  c.std_error = se;
  return c;
}

bool RunReport::pass() const {
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

std::string report_json(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

std::string reports_json(const std::vector<RunReport>& rs, std::uint64_t seed) {
  ojson j;
  j["suite"] = "all";
  j["seed"] = seed;
  bool pass = true;
  double wall = 0.0;
  ojson arr = ojson::array();
  for (const auto& r : rs) {
    pass = pass && r.pass();
    wall += r.wall_time_s;
    arr.push_back(to_json(r));
  }
  j["pass"] = pass;
  j["suites"] = std::move(arr);
  j["wall_time_s"] = wall;
  return j.dump(2) + "\n";
}

std::string report_pretty(const RunReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << "  seed " << r.seed << "  " << (r.pass() ? "PASS" : "FAIL") << "\n";
  std::size_t width = 4;
  for (const auto& c : r.cases) width = std::max(width, c.name.size());
  for (const auto& c : r.cases) {
    os << "  " << (c.pass ? "ok  " : "FAIL") << "  " << c.name << std::string(width - c.name.size() + 2, ' ')
       << "dev " << fmt(c.deviation) << "  tol " << fmt(c.tolerance);
    if (c.std_error) os << "  est " << fmt(*c.estimate) << "  se " << fmt(*c.std_error);
    os << "\n";
  }
  for (const auto& [k, v] : r.info) os << "  info  " << k << " = " << fmt(v) << "\n";
  os << "  wall " << r.wall_time_s << " s\n";
  return os.str();
}

std::string reports_pretty(const std::vector<RunReport>& rs) {
  std::string out;
  for (const auto& r : rs) out += report_pretty(r);
  return out;
}

}  // namespace gwn
