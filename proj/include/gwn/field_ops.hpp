#pragma once

#include <vector>

#include "gwn/ext_fock.hpp"
#include "gwn/measure.hpp"
#include "gwn/sym_tensor.hpp"

namespace gwn {

// ---- kernel-level actions (one degree at a time) ----

// xi ⊗̂ f
template <typename Scalar>
SymTensor<Scalar> create_kernel(const TestFunction& xi, const SymTensor<Scalar>& f) {
  if (xi.size() != f.atoms()) throw DimensionError("create: length mismatch");
  const int n = f.degree();
  SymTensor<Scalar> out(f.atoms(), n + 1);
  const double inv = 1.0 / (n + 1);
  for (std::int64_t r = 0; r < out.size(); ++r) {
    const auto t = out.tuple(r);
    Scalar s(0), last(0);
    for (int p = 0; p <= n; ++p) {
      if (p == 0 || t[p] != t[p - 1]) last = Scalar(xi[t[p]]) * f[rank_without(t, p)];
      s += last;
    }
    out[r] = s * Scalar(inv);
  }
  return out;
}

// sum_p xi(i_p) f(i)
template <typename Scalar>
SymTensor<Scalar> neutral_kernel(const TestFunction& xi, const SymTensor<Scalar>& f) {
  if (xi.size() != f.atoms()) throw DimensionError("neutral: length mismatch");
  if (f.degree() == 0) return SymTensor<Scalar>(f.atoms(), 0);
  return Scalar(f.degree()) * multiply_pointwise_first_slot(f, xi);
}

// n sum_j w_j xi_j f(j, ·); degree n >= 1.
template <typename Scalar>
SymTensor<Scalar> annihilate1_kernel(const TestFunction& xi, const SymTensor<Scalar>& f, const AtomicMeasure& m) {
  require_length(m, xi, "annihilate1");
  return Scalar(f.degree()) * slot_contract(f, m.weights().cwiseProduct(xi));
}

// n sum_p xi(i_p) f(i, i_p): identify two slots; degree n >= 1.
template <typename Scalar>
SymTensor<Scalar> annihilate2_kernel(const TestFunction& xi, const SymTensor<Scalar>& f) {
  if (xi.size() != f.atoms()) throw DimensionError("annihilate2: length mismatch");
  const int n = f.degree();
  if (n == 0) throw ContractViolation("annihilate2: degree-0 kernel");
  SymTensor<Scalar> out(f.atoms(), n - 1);
  for (std::int64_t r = 0; r < out.size(); ++r) {
    const auto t = out.tuple(r);
    Scalar s(0);
    for (int i : t) s += Scalar(xi[i]) * f[rank_with(t, i)];
    out[r] = Scalar(n) * s;
  }
  return out;
}

// ---- Fock-vector operators ----

template <typename Scalar>
FockVector<Scalar> create(const TestFunction& xi, const FockVector<Scalar>& f) {
  FockVector<Scalar> out(f.atoms(), f.max_degree() + 1);
  for (int n = 0; n <= f.max_degree(); ++n) out[n + 1] = create_kernel(xi, f[n]);
  return out;
}

template <typename Scalar>
FockVector<Scalar> neutral(const TestFunction& xi, const FockVector<Scalar>& f) {
  FockVector<Scalar> out(f.atoms(), f.max_degree());
  for (int n = 1; n <= f.max_degree(); ++n) out[n] = neutral_kernel(xi, f[n]);
  return out;
}

template <typename Scalar>
FockVector<Scalar> annihilate1(const TestFunction& xi, const FockVector<Scalar>& f, const AtomicMeasure& m) {
  FockVector<Scalar> out(f.atoms(), std::max(f.max_degree() - 1, 0));
  for (int n = 1; n <= f.max_degree(); ++n) out[n - 1] = annihilate1_kernel(xi, f[n], m);
  return out;
}

template <typename Scalar>
FockVector<Scalar> annihilate2(const TestFunction& xi, const FockVector<Scalar>& f) {
  FockVector<Scalar> out(f.atoms(), std::max(f.max_degree() - 1, 0));
  for (int n = 2; n <= f.max_degree(); ++n) out[n - 1] = annihilate2_kernel(xi, f[n]);
  return out;
}

// a(xi) = a+ + 2 a0 + <xi> id + a1- + a2-
template <typename Scalar>
FockVector<Scalar> gamma_field(const TestFunction& xi, const FockVector<Scalar>& f, const AtomicMeasure& m) {
  require_length(m, xi, "gamma_field");
  if (f.atoms() != m.atoms()) throw DimensionError("gamma_field: atom count mismatch");
  FockVector<Scalar> out = create(xi, f);
  out += Scalar(2) * neutral(xi, f);
  out += Scalar(integrate(m, xi)) * f;
  out += annihilate1(xi, f, m);
  out += annihilate2(xi, f);
  return out;
}

// ---- Jacobi structure of the one-set subspace ----

struct JacobiCoefficients {
  double sigma = 1.0;
  std::vector<double> alphas;  // alpha_n = sqrt(n (n-1+sigma)), alpha_0 = 0
  std::vector<double> betas;   // beta_n = 2n + sigma
  std::vector<double> norms;   // c_n, c_0 = 1, c_n / c_{n-1} = alpha_n
};

JacobiCoefficients jacobi_coefficients(double sigma, int N);

// sigma (sigma+1) ... (sigma+n-1)
double rising_factorial(double sigma, int n);

struct JacobiActionReport {
  double sigma = 0.0;
  std::vector<double> action_deviation;   // max coefficient deviation from the three-term form, per n
  std::vector<double> c_from_extnorm;     // sqrt(n! ext_inner_n(chi^n, chi^n))
  std::vector<double> c_closed;           // from jacobi_coefficients
  double max_action_deviation = 0.0;
  double max_norm_rel_error = 0.0;
};

// Apply a(chi) to chi^{⊗n} for n <= N and compare with the tridiagonal expansion.
JacobiActionReport jacobi_action_check(const AtomicMeasure& m, const TestFunction& delta, int N);

}  // namespace gwn
