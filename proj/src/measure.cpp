#include "gwn/measure.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace gwn {

double compensated_sum(const Eigen::Ref<const Eigen::VectorXd>& v) {
  double sum = 0.0;
  double c = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = v[i];
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

AtomicMeasure::AtomicMeasure(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  if (weights_.size() < 1) throw DomainError("measure needs at least one atom");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw DomainError("atom weights must be finite and strictly positive");
  }
  total_ = compensated_sum(weights_);
}

AtomicMeasure AtomicMeasure::single_atom(double mass) {
  Eigen::VectorXd w(1);
  w << mass;
  return AtomicMeasure(w);
}

AtomicMeasure AtomicMeasure::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_array())
    throw DomainError("measure JSON must be an object with a \"weights\" array");
  const auto& arr = j["weights"];
  Eigen::VectorXd w(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw DomainError("measure weights must be numbers");
    w[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return AtomicMeasure(w);
}

AtomicMeasure AtomicMeasure::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open measure file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string AtomicMeasure::to_json_text() const {
  nlohmann::json j;
  j["weights"] = std::vector<double>(weights_.data(), weights_.data() + weights_.size());
  return j.dump();
}

void require_length(const AtomicMeasure& m, const TestFunction& f, const char* what) {
  if (f.size() != m.atoms())
    throw DimensionError(std::string(what) + ": test function length " + std::to_string(f.size()) +
                         " != atom count " + std::to_string(m.atoms()));
}

double integrate(const AtomicMeasure& m, const TestFunction& f) {
  require_length(m, f, "integrate");
  return compensated_sum(m.weights().cwiseProduct(f));
}

double l2_inner(const AtomicMeasure& m, const TestFunction& f, const TestFunction& g) {
  require_length(m, f, "l2_inner");
  require_length(m, g, "l2_inner");
  return compensated_sum(m.weights().cwiseProduct(f).cwiseProduct(g));
}

TestFunction indicator(const AtomicMeasure& m, int atom) {
  if (atom < 0 || atom >= m.atoms()) throw DimensionError("indicator: atom out of range");
  TestFunction e = TestFunction::Zero(m.atoms());
  e[atom] = 1.0;
  return e;
}

}  // namespace gwn
