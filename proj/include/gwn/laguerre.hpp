#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gwn {

// Orthonormal polynomials of the Gamma(sigma) law from the three-term recurrence
//   P_{n+1} = ((s - beta_n) P_n - alpha_n P_{n-1}) / alpha_{n+1}.
struct LaguerreSystem {
  double sigma = 1.0;
  int N = 0;
  Eigen::MatrixXd coefficients;  // row n holds the monomial coefficients of P_n (ascending powers)

  // P_n(s) by running the recurrence (stable for large s).
  double evaluate(int n, double s) const;
  // P_n(s) from the stored coefficients (Horner).
  double evaluate_coefficients(int n, double s) const;
};

LaguerreSystem laguerre_system(double sigma, int N);

// Classical generalized Laguerre L_n^{(a)}(s) = sum_k (-1)^k C(n+a, n-k) s^k / k!, a > -1.
double classical_laguerre(int n, double a, double s);
// L_n^{(a)} divided by its norm sqrt((a+1)_n / n!) under the Gamma(a+1) probability law.
double normalized_laguerre(int n, double a, double s);

// Nodes and weights for integrals against s^a e^{-s} / Gamma(a+1) on (0, inf);
// with a = 0 this is the plain e^{-s} rule. Exact up to polynomial degree 2*nodes-1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename F>
  double integrate(F&& f) const {
    double total = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) total += weights[k] * f(nodes[k]);
    return total;
  }
};

QuadratureRule gauss_laguerre(int nodes, double a = 0.0);

// Shared 64-node e^{-s} rule.
const QuadratureRule& default_quadrature();

}  // namespace gwn
