#pragma once

#include "gwn/laguerre.hpp"
#include "gwn/measure.hpp"
#include "gwn/sampling.hpp"
#include "gwn/wick.hpp"

namespace gwn {

// ---- operators on polynomial functionals ----

// Gradient along delta_atom (monomial basis): <omega^n, f> -> n <omega^{n-1}, f(atom, .)>.
PolyFunctional nabla(const PolyFunctional& p, int atom, const AtomicMeasure& m);
// Gateaux derivative along the mass vector v (monomial basis).
PolyFunctional gateaux(const PolyFunctional& p, const Eigen::VectorXd& v, const AtomicMeasure& m);
// D_xi: Gateaux derivative along the measure xi d sigma, i.e. the mass vector w_i xi_i.
PolyFunctional directional_derivative(const PolyFunctional& p, const TestFunction& xi, const AtomicMeasure& m);

// Gamma annihilation gradient (Wick basis): <:omega^n:, F> -> n <:omega^{n-1}:, F(atom, .)>.
PolyFunctional del(const PolyFunctional& p, int atom, const AtomicMeasure& m);
// Its dual: <:omega^n:, F> -> <:omega^{n+1}:, delta_atom ⊗̂ F>, delta_atom = e_atom / w_atom.
PolyFunctional del_dagger(const PolyFunctional& p, int atom, const AtomicMeasure& m);
// Multiplication by the density omega(x) = s_x / w_x, written through del and del_dagger.
PolyFunctional coordinate_multiply(const PolyFunctional& p, int atom, const AtomicMeasure& m);
// Multiplication by <omega, xi> (monomial basis).
PolyFunctional pairing_multiply(const PolyFunctional& p, const TestFunction& xi, const AtomicMeasure& m);

// integral_0^inf (p(omega + s delta_atom) - p(omega)) e^{-s} ds by quadrature.
double del_integral(const PolyFunctional& p, int atom, const OmegaSample& w, const QuadratureRule& q,
                    const AtomicMeasure& m);
// sum_i w_i xi_i del_integral(p, i, ...)
double annihilate1_integral(const PolyFunctional& p, const TestFunction& xi, const AtomicMeasure& m,
                            const OmegaSample& w, const QuadratureRule& q);

// Remark-type explicit creation: sum over jumps (i, u) of u xi_i p(omega - u delta_i) - <xi> p(omega).
double a1_plus_explicit(const PolyFunctional& p, const TestFunction& xi, const JumpConfiguration& conf,
                        const AtomicMeasure& m);
// Same with each atom's aggregated mass treated as one jump (atom's mass zeroed).
double a1_plus_explicit(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w, const AtomicMeasure& m);

// ---- identity checks ----

struct SeriesReport {
  double del_as_nabla_series = 0.0;   // del - sum_{n>=1} nabla^n
  double nabla_as_del_series = 0.0;   // nabla - sum_{n>=1} (-1)^{n+1} del^n
  double commutation = 0.0;           // nabla_atom del_j - del_j nabla_atom, worst over j
};
SeriesReport series_identities_check(const PolyFunctional& p, int atom, const AtomicMeasure& m);

struct IdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;  // |lhs - rhs| / max(1, |lhs|, |rhs|)
};
IdentityReport make_identity(double lhs, double rhs);

// S[omega(x) p](theta) = (theta_x + 1) U + (1 + 2 theta_x) D_{delta_x} U + theta_x D_{delta_x}^2 U, U = S[p]
IdentityReport theorem5_check(const PolyFunctional& p, const TestFunction& theta, int atom, const AtomicMeasure& m);
// S[<omega,xi> p](theta) = <xi, theta + 1> U + D_{xi(1+2 theta)} U + sum_x w_x xi_x theta_x D_{delta_x}^2 U
IdentityReport theorem5_pairing_check(const PolyFunctional& p, const TestFunction& theta, const TestFunction& xi,
                                      const AtomicMeasure& m);
// del_integral against evaluate(del p)
IdentityReport theorem6_check(const PolyFunctional& p, int atom, const OmegaSample& w, const AtomicMeasure& m,
                              const QuadratureRule& q = default_quadrature());
// annihilate1_integral against the Fock-side a1-(xi) pushed through evaluation
IdentityReport theorem6_annihilation_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                                           const AtomicMeasure& m, const QuadratureRule& q = default_quadrature());
IdentityReport theorem7_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                              const AtomicMeasure& m);
IdentityReport theorem8_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                              const AtomicMeasure& m);

struct Theorem9Report {
  IdentityReport nabla_form;      // gradient-inside-integral form
  IdentityReport shift_form;      // shifted-value form, sign of the <xi> phi term corrected
  double printed_sign_deviation;  // |shift form with the printed sign - lhs| = 2 |<xi> phi(omega)|
};
Theorem9Report theorem9_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                              const AtomicMeasure& m, const QuadratureRule& q = default_quadrature());

// sum_x w_x xi_x coordinate_multiply(p, x) evaluated, against <omega, xi> p(omega)
IdentityReport multiplication_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                                    const AtomicMeasure& m);
// a+ + 2 a0 + <xi> + a1- + a2- assembled from the omega-side formulas, against <omega, xi> p(omega)
IdentityReport reassembly_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                                const AtomicMeasure& m, const QuadratureRule& q = default_quadrature());

// MC estimate of E[(a1+ phi) psi - phi (a1- psi)] under compound Poisson configurations; target 0.
MCEstimate mc_a1_adjointness(const AtomicMeasure& m, const PolyFunctional& phi, const PolyFunctional& psi,
                             const TestFunction& xi, const SamplerConfig& cfg, const QuadratureRule& q);

}  // namespace gwn
