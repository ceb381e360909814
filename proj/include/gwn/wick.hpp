#pragma once

#include <vector>

#include "gwn/measure.hpp"
#include "gwn/sym_tensor.hpp"

namespace gwn {

// Realization of the noise: nonnegative mass s_i on each atom, <omega, xi> = sum_i s_i xi_i.
class OmegaSample {
 public:
  explicit OmegaSample(Eigen::VectorXd masses);

  int atoms() const { return static_cast<int>(masses_.size()); }
  const Eigen::VectorXd& masses() const { return masses_; }
  double mass(int i) const { return masses_[i]; }
  double pair(const TestFunction& xi) const;
  // omega + s * delta_atom (direction convention: unit mass on the atom)
  OmegaSample shifted(int atom, double s) const;

 private:
  Eigen::VectorXd masses_;
};

enum class Basis { Monomial, GammaWick };

const char* basis_name(Basis b);

// Polynomial functional: sum_n <omega^{⊗n}, f_n> (Monomial) or sum_n <:omega^{⊗n}:, f_n> (GammaWick).
struct PolyFunctional {
  Basis basis = Basis::GammaWick;
  Fock kernels;

  int atoms() const { return kernels.atoms(); }
  int degree() const { return kernels.max_degree(); }

  static PolyFunctional constant(Basis b, int atoms, double c);
  static PolyFunctional single(Basis b, const Tensor& t);
};

// q_n = <:omega^{⊗n}:, xi^{⊗n}>, n = 0..N, from the field-operator relation on
// power kernels (independent of the kernel recurrence below).
std::vector<double> wick_pair_rank_one(const OmegaSample& w, const TestFunction& xi, const AtomicMeasure& m, int N);

// Kernels K_0..K_N of the Wick powers with pairing <:omega^n:, f> = sum over ordered
// tuples of prod w * K_n * f; built from the kernel recurrence with discrete deltas.
std::vector<Tensor> wick_kernels(const OmegaSample& w, const AtomicMeasure& m, int N);
Tensor wick_kernel(const OmegaSample& w, const AtomicMeasure& m, int n);

// sum over ordered tuples of prod_k w(i_k) * a(i) * b(i)
double weighted_pairing(const AtomicMeasure& m, const Tensor& a, const Tensor& b);

PolyFunctional monomial_to_wick(const PolyFunctional& p, const AtomicMeasure& m);
PolyFunctional wick_to_monomial(const PolyFunctional& p, const AtomicMeasure& m);
PolyFunctional to_basis(const PolyFunctional& p, Basis b, const AtomicMeasure& m);

double evaluate(const PolyFunctional& p, const OmegaSample& w, const AtomicMeasure& m);

struct WickExp {
  double truncated_series = 0.0;
  double closed_form = 0.0;
};
// Wick exponential of <omega, phi>: series sum_{n<=N} q_n/n! and the closed form.
WickExp wick_exp(const OmegaSample& w, const TestFunction& phi, const AtomicMeasure& m, int N);

PolyFunctional wick_product(const PolyFunctional& p, const PolyFunctional& q);

// sum_n sum over ordered tuples prod(w theta) F_n; p must be in the Wick basis.
double s_transform(const PolyFunctional& p, const TestFunction& theta, const AtomicMeasure& m);

// Wick-basis functional with kernels K_n(upsilon)/n!, n <= N.
PolyFunctional delta_functional(const OmegaSample& upsilon, const AtomicMeasure& m, int N);

// <<F, f>> = sum_n n! <F_n, f_n>_H
double dual_pairing(const PolyFunctional& F, const Fock& f, const AtomicMeasure& m);

}  // namespace gwn
