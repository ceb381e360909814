#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gwn {

struct CaseResult {
  std::string name;
  double target = 0.0;
  double value = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // Monte Carlo cases carry the estimate and its standard error.
  std::optional<double> estimate, std_error;

  // deviation = |value - target|
  static CaseResult compare(std::string name, double target, double value, double tolerance);
  // An already-computed deviation measured against 0.
  static CaseResult bound(std::string name, double deviation, double tolerance);
  // |estimate - target| against se_mult * se (plus a 1e-12 relative roundoff floor).
  static CaseResult monte_carlo(std::string name, double estimate, double target, double se, double se_mult);
};

struct RunReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;
  // Informational numbers that do not decide pass/fail.
  std::vector<std::pair<std::string, double>> info;
  double wall_time_s = 0.0;

  bool pass() const;
  void add(CaseResult c) { cases.push_back(std::move(c)); }
};

// JSON text of one report or of a list (the "all" run).
std::string report_json(const RunReport& r);
std::string reports_json(const std::vector<RunReport>& rs, std::uint64_t seed);
// Human-readable table.
std::string report_pretty(const RunReport& r);
std::string reports_pretty(const std::vector<RunReport>& rs);

}  // namespace gwn
