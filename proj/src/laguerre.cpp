#include "gwn/laguerre.hpp"

#include <cmath>
#include <Eigen/Eigenvalues>

#include "gwn/error.hpp"
#include "gwn/field_ops.hpp"

namespace gwn {

LaguerreSystem laguerre_system(double sigma, int N) {
  const auto jc = jacobi_coefficients(sigma, N + 1);
  LaguerreSystem sys;
  sys.sigma = sigma;
  sys.N = N;
  sys.coefficients = Eigen::MatrixXd::Zero(N + 1, N + 1);
  sys.coefficients(0, 0) = 1.0;
  for (int n = 0; n < N; ++n) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(N + 1);
    // s * P_n shifts coefficients up by one power
    next.segment(1, n + 1) = sys.coefficients.row(n).head(n + 1).transpose();
    next -= jc.betas[n] * sys.coefficients.row(n).transpose();
    if (n > 0) next -= jc.alphas[n] * sys.coefficients.row(n - 1).transpose();
    sys.coefficients.row(n + 1) = next.transpose() / jc.alphas[n + 1];
  }
  return sys;
}

double LaguerreSystem::evaluate(int n, double s) const {
  if (n < 0 || n > N) throw ContractViolation("LaguerreSystem::evaluate: degree out of range");
  double prev = 0.0, cur = 1.0, alpha_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    const double alpha_next = std::sqrt((k + 1) * (k + sigma));
    const double next = ((s - (2.0 * k + sigma)) * cur - alpha_prev * prev) / alpha_next;
    prev = cur;
    cur = next;
    alpha_prev = alpha_next;
  }
  return cur;
}

double LaguerreSystem::evaluate_coefficients(int n, double s) const {
  if (n < 0 || n > N) throw ContractViolation("LaguerreSystem::evaluate_coefficients: degree out of range");
  double v = 0.0;
  for (int k = n; k >= 0; --k) v = v * s + coefficients(n, k);
  return v;
}

double classical_laguerre(int n, double a, double s) {
  if (!(a > -1.0)) throw DomainError("classical_laguerre: parameter must exceed -1");
  double total = 0.0;
  double sk_over_kfact = 1.0;
  for (int k = 0; k <= n; ++k) {
    // C(n+a, n-k) = prod_{j=1}^{n-k} (a+k+j)/j
    double binom = 1.0;
    for (int j = 1; j <= n - k; ++j) binom *= (a + k + j) / j;
    total += (k % 2 ? -1.0 : 1.0) * binom * sk_over_kfact;
    sk_over_kfact *= s / (k + 1);
  }
  return total;
}

double normalized_laguerre(int n, double a, double s) {
  double norm2 = 1.0;  // (a+1)_n / n!
  for (int k = 0; k < n; ++k) norm2 *= (a + 1.0 + k) / (k + 1.0);
  return classical_laguerre(n, a, s) / std::sqrt(norm2);
}

QuadratureRule gauss_laguerre(int nodes, double a) {
  if (nodes < 1) throw ContractViolation("gauss_laguerre: need at least one node");
  if (!(a > -1.0)) throw DomainError("gauss_laguerre: parameter must exceed -1");
  Eigen::VectorXd diag(nodes), sub(std::max(nodes - 1, 0));
  for (int k = 0; k < nodes; ++k) diag[k] = 2.0 * k + a + 1.0;
  for (int k = 1; k < nodes; ++k) sub[k - 1] = std::sqrt(k * (k + a));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("gauss_laguerre: eigensolver failed");
  QuadratureRule q;
  for (int k = 0; k < nodes; ++k) {
    const double x = es.eigenvalues()[k];
    // Christoffel number 1 / sum_j p_j(x)^2 over the orthonormal family, rescaled
    // as we go: the squared eigenvector entry loses all relative accuracy far out.
    double prev = 0.0, cur = 1.0, sum = 1.0, log_scale = 0.0;
    for (int j = 0; j + 1 < nodes; ++j) {
      const double b_next = std::sqrt((j + 1) * (j + 1 + a));
      const double b_cur = j > 0 ? sub[j - 1] : 0.0;
      const double next = ((x - diag[j]) * cur - b_cur * prev) / b_next;
      prev = cur;
      cur = next;
      sum += cur * cur;
      if (sum > 1e200) {
        prev *= 1e-100;
        cur *= 1e-100;
        sum *= 1e-200;
        log_scale += 200.0 * std::log(10.0);
      }
    }
    q.nodes.push_back(x);
    q.weights.push_back(std::exp(-std::log(sum) - log_scale));
  }
  return q;
}

const QuadratureRule& default_quadrature() {
  static const QuadratureRule rule = gauss_laguerre(64, 0.0);
  return rule;
}

}  // namespace gwn
