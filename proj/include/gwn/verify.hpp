#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwn/measure.hpp"
#include "gwn/report.hpp"

namespace gwn {

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::int64_t samples = 100000;     // Monte Carlo suites
  std::optional<double> se_mult;     // overrides the per-suite SE multiplier (3 for Laplace, 4 otherwise)
  std::optional<AtomicMeasure> measure;  // Monte Carlo suites; drawn from the seed when absent
  int threads = 0;
};

// Suite names in report order.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

RunReport run_suite(const std::string& name, const VerifyOptions& opts);
std::vector<RunReport> run_all(const VerifyOptions& opts);

}  // namespace gwn
