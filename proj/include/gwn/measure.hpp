#pragma once

#include <Eigen/Dense>
#include <string>

#include "gwn/error.hpp"

namespace gwn {

// Values of a test function at the atoms.
using TestFunction = Eigen::VectorXd;

// Finite atomic stand-in for the intensity measure: atom i carries weight w_i > 0.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(Eigen::VectorXd weights);

  int atoms() const { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const { return weights_; }
  double weight(int i) const { return weights_[i]; }
  double total_mass() const { return total_; }

  static AtomicMeasure single_atom(double mass);
  static AtomicMeasure from_json_text(const std::string& text);
  static AtomicMeasure from_json_file(const std::string& path);
  std::string to_json_text() const;

 private:
  Eigen::VectorXd weights_;
  double total_ = 0.0;
};

// Neumaier-compensated sum.
double compensated_sum(const Eigen::Ref<const Eigen::VectorXd>& v);

void require_length(const AtomicMeasure& m, const TestFunction& f, const char* what);

// <f> = sum_i w_i f_i
double integrate(const AtomicMeasure& m, const TestFunction& f);

// <f,g> = sum_i w_i f_i g_i
double l2_inner(const AtomicMeasure& m, const TestFunction& f, const TestFunction& g);

// 0/1 vector of atom i.
TestFunction indicator(const AtomicMeasure& m, int atom);

}  // namespace gwn
