#include <algorithm>
#include <cmath>

#include "gwn/field_ops.hpp"

namespace gwn {

double rising_factorial(double sigma, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= sigma + k;
  return r;
}

JacobiCoefficients jacobi_coefficients(double sigma, int N) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("jacobi_coefficients: sigma must be > 0");
  if (N < 0) throw ContractViolation("jacobi_coefficients: negative N");
  JacobiCoefficients jc;
  jc.sigma = sigma;
  for (int n = 0; n <= N; ++n) {
    jc.alphas.push_back(std::sqrt(n * (n - 1 + sigma)));
    jc.betas.push_back(2.0 * n + sigma);
    jc.norms.push_back(n == 0 ? 1.0 : jc.norms.back() * jc.alphas.back());
  }
  return jc;
}

JacobiActionReport jacobi_action_check(const AtomicMeasure& m, const TestFunction& delta, int N) {
  require_length(m, delta, "jacobi_action_check");
  for (Eigen::Index i = 0; i < delta.size(); ++i)
    if (delta[i] != 0.0 && delta[i] != 1.0) throw ContractViolation("jacobi_action_check: Delta must be a 0/1 vector");
  const double sigma = integrate(m, delta);
  if (!(sigma > 0.0)) throw DomainError("jacobi_action_check: empty set");
  const auto jc = jacobi_coefficients(sigma, N);

  JacobiActionReport rep;
  rep.sigma = sigma;
  for (int n = 0; n <= N; ++n) {
    const Fock lhs = gamma_field(delta, Fock::single(rank_one(delta, n)), m);
    Fock rhs = Fock::single(rank_one(delta, n + 1));
    rhs += (2.0 * n + sigma) * Fock::single(rank_one(delta, n));
    if (n > 0) rhs += (n * (n - 1 + sigma)) * Fock::single(rank_one(delta, n - 1));
    const double dev = max_abs_difference(lhs, rhs);
    rep.action_deviation.push_back(dev);
    rep.max_action_deviation = std::max(rep.max_action_deviation, dev);

    const Tensor chi_n = rank_one(delta, n);
    const double c = std::sqrt(factorial(n) * ext_inner_n(m, chi_n, chi_n));
    rep.c_from_extnorm.push_back(c);
    rep.c_closed.push_back(jc.norms[n]);
    rep.max_norm_rel_error = std::max(rep.max_norm_rel_error, std::abs(c - jc.norms[n]) / jc.norms[n]);
  }
  return rep;
}

}  // namespace gwn
