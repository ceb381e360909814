#include "gwn/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwn/field_ops.hpp"

namespace gwn {

namespace {

void require_poly(const AtomicMeasure& m, const PolyFunctional& p, const char* what) {
  if (p.atoms() != m.atoms()) throw DimensionError(std::string(what) + ": functional/measure atom count mismatch");
}

void require_atom(const AtomicMeasure& m, int atom, const char* what) {
  if (atom < 0 || atom >= m.atoms()) throw DimensionError(std::string(what) + ": atom out of range");
}

// Apply a degree-lowering kernel map n -> n-1 to every component; degree 0 maps to zero.
template <typename Op>
Fock lower(const Fock& f, Op op) {
  Fock out(f.atoms(), std::max(0, f.max_degree() - 1));
  for (int n = 1; n <= f.max_degree(); ++n) out[n - 1] = op(f[n]);
  return out;
}

Fock slot_derivative(const Fock& f, int atom) {
  return lower(f, [atom](const Tensor& t) { return double(t.degree()) * slot_fix(t, atom); });
}

PolyFunctional monomial(const PolyFunctional& p, const AtomicMeasure& m) { return to_basis(p, Basis::Monomial, m); }
PolyFunctional wick(const PolyFunctional& p, const AtomicMeasure& m) { return to_basis(p, Basis::GammaWick, m); }

// Kernel of delta_atom under the integral-kernel convention: [j = atom] / w_atom.
TestFunction delta_kernel(const AtomicMeasure& m, int atom) {
  TestFunction d = TestFunction::Zero(m.atoms());
  d[atom] = 1.0 / m.weight(atom);
  return d;
}

// Quadrature of (phi(omega + s delta_atom) - phi(omega)) e^{-s}; pm in the monomial basis.
double shift_integral(const PolyFunctional& pm, int atom, const OmegaSample& w, const QuadratureRule& q,
                      const AtomicMeasure& m) {
  const double base = evaluate(pm, w, m);
  double total = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k)
    total += q.weights[k] * (evaluate(pm, w.shifted(atom, q.nodes[k]), m) - base);
  return total;
}

// Quadrature of phi(omega + s delta_atom) e^{-s}.
double shifted_value_integral(const PolyFunctional& pm, int atom, const OmegaSample& w, const QuadratureRule& q,
                              const AtomicMeasure& m) {
  double total = 0.0;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) total += q.weights[k] * evaluate(pm, w.shifted(atom, q.nodes[k]), m);
  return total;
}

// sum_x s_x xi_x g_x(omega): pairing of the sampled omega with a per-atom family
template <typename G>
double coordinate_pairing(const TestFunction& xi, const OmegaSample& w, G g) {
  double total = 0.0;
  for (int x = 0; x < w.atoms(); ++x)
    if (xi[x] != 0.0 && w.mass(x) != 0.0) total += w.mass(x) * xi[x] * g(x);
  return total;
}

// theta-derivatives of U = S[F]: order-fold derivative along delta_x, evaluated at theta.
double s_derivative(const Fock& F, int x, int order, const Eigen::VectorXd& v) {
  double total = 0.0;
  for (int n = order; n <= F.max_degree(); ++n) {
    Tensor t = F[n];
    double c = 1.0;
    for (int k = 0; k < order; ++k) {
      c *= n - k;
      t = slot_fix(t, x);
    }
    total += c * full_contraction(t, v);
  }
  return total;
}

double max_gap(const PolyFunctional& a, const PolyFunctional& b) {
  const double scale = std::max({1.0, max_abs_coefficient(a.kernels), max_abs_coefficient(b.kernels)});
  return max_abs_difference(a.kernels, b.kernels) / scale;
}

}  // namespace

PolyFunctional nabla(const PolyFunctional& p, int atom, const AtomicMeasure& m) {
  require_poly(m, p, "nabla");
  require_atom(m, atom, "nabla");
  return PolyFunctional{Basis::Monomial, slot_derivative(monomial(p, m).kernels, atom)};
}

PolyFunctional gateaux(const PolyFunctional& p, const Eigen::VectorXd& v, const AtomicMeasure& m) {
  require_poly(m, p, "gateaux");
  require_length(m, v, "gateaux");
  const auto pm = monomial(p, m);
  return PolyFunctional{Basis::Monomial,
                        lower(pm.kernels, [&v](const Tensor& t) { return double(t.degree()) * slot_contract(t, v); })};
}

PolyFunctional directional_derivative(const PolyFunctional& p, const TestFunction& xi, const AtomicMeasure& m) {
  require_length(m, xi, "directional_derivative");
  return gateaux(p, m.weights().cwiseProduct(xi), m);
}

PolyFunctional del(const PolyFunctional& p, int atom, const AtomicMeasure& m) {
  require_poly(m, p, "del");
  require_atom(m, atom, "del");
  return PolyFunctional{Basis::GammaWick, slot_derivative(wick(p, m).kernels, atom)};
}

PolyFunctional del_dagger(const PolyFunctional& p, int atom, const AtomicMeasure& m) {
  require_poly(m, p, "del_dagger");
  require_atom(m, atom, "del_dagger");
  const auto pw = wick(p, m);
  const TestFunction d = delta_kernel(m, atom);
  Fock out(p.atoms(), pw.degree() + 1);
  for (int n = 0; n <= pw.degree(); ++n) out[n + 1] = create_kernel(d, pw.kernels[n]);
  return PolyFunctional{Basis::GammaWick, out};
}

PolyFunctional coordinate_multiply(const PolyFunctional& p, int atom, const AtomicMeasure& m) {
  const auto pw = wick(p, m);
  const auto d1 = del(pw, atom, m);
  const auto d2 = del(d1, atom, m);
  Fock out = pw.kernels;
  out += del_dagger(pw, atom, m).kernels;
  out += 2.0 * del_dagger(d1, atom, m).kernels;
  out += d1.kernels;
  out += del_dagger(d2, atom, m).kernels;
  return PolyFunctional{Basis::GammaWick, out};
}

PolyFunctional pairing_multiply(const PolyFunctional& p, const TestFunction& xi, const AtomicMeasure& m) {
  require_poly(m, p, "pairing_multiply");
  require_length(m, xi, "pairing_multiply");
  const auto pm = monomial(p, m);
  Fock out(p.atoms(), pm.degree() + 1);
  for (int n = 0; n <= pm.degree(); ++n) out[n + 1] = create_kernel(xi, pm.kernels[n]);
  return PolyFunctional{Basis::Monomial, out};
}

double del_integral(const PolyFunctional& p, int atom, const OmegaSample& w, const QuadratureRule& q,
                    const AtomicMeasure& m) {
  require_poly(m, p, "del_integral");
  require_atom(m, atom, "del_integral");
  return shift_integral(monomial(p, m), atom, w, q, m);
}

double annihilate1_integral(const PolyFunctional& p, const TestFunction& xi, const AtomicMeasure& m,
                            const OmegaSample& w, const QuadratureRule& q) {
  require_poly(m, p, "annihilate1_integral");
  require_length(m, xi, "annihilate1_integral");
  const auto pm = monomial(p, m);
  double total = 0.0;
  for (int i = 0; i < m.atoms(); ++i)
    if (xi[i] != 0.0) total += m.weight(i) * xi[i] * shift_integral(pm, i, w, q, m);
  return total;
}

double a1_plus_explicit(const PolyFunctional& p, const TestFunction& xi, const JumpConfiguration& conf,
                        const AtomicMeasure& m) {
  require_poly(m, p, "a1_plus_explicit");
  require_length(m, xi, "a1_plus_explicit");
  if (static_cast<int>(conf.jumps.size()) != m.atoms())
    throw DimensionError("a1_plus_explicit: configuration/measure atom count mismatch");
  const auto pm = monomial(p, m);
  const OmegaSample w = conf.aggregate();
  double total = 0.0;
  for (int i = 0; i < m.atoms(); ++i) {
    if (xi[i] == 0.0) continue;
    for (double u : conf.jumps[i]) {
      Eigen::VectorXd s = w.masses();
      s[i] = std::max(0.0, s[i] - u);
      total += u * xi[i] * evaluate(pm, OmegaSample(s), m);
    }
  }
  return total - integrate(m, xi) * evaluate(pm, w, m);
}

double a1_plus_explicit(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w, const AtomicMeasure& m) {
  JumpConfiguration conf;
  for (int i = 0; i < w.atoms(); ++i)
    conf.jumps.push_back(w.mass(i) > 0.0 ? std::vector<double>{w.mass(i)} : std::vector<double>{});
  return a1_plus_explicit(p, xi, conf, m);
}

SeriesReport series_identities_check(const PolyFunctional& p, int atom, const AtomicMeasure& m) {
  require_poly(m, p, "series_identities_check");
  require_atom(m, atom, "series_identities_check");
  const int N = p.degree();
  SeriesReport r;

  // del = sum_{n>=1} nabla^n, compared in the monomial basis
  {
    PolyFunctional power = monomial(p, m);
    PolyFunctional sum{Basis::Monomial, Fock(p.atoms(), 0)};
    for (int n = 1; n <= N; ++n) {
      power = nabla(power, atom, m);
      sum.kernels += power.kernels;
    }
    r.del_as_nabla_series = max_gap(monomial(del(p, atom, m), m), sum);
  }
  // nabla = sum_{n>=1} (-1)^{n+1} del^n, compared in the Wick basis
  {
    PolyFunctional power = wick(p, m);
    PolyFunctional sum{Basis::GammaWick, Fock(p.atoms(), 0)};
    for (int n = 1; n <= N; ++n) {
      power = del(power, atom, m);
      sum.kernels += (n % 2 ? 1.0 : -1.0) * power.kernels;
    }
    r.nabla_as_del_series = max_gap(wick(nabla(p, atom, m), m), sum);
  }
  for (int j = 0; j < m.atoms(); ++j) {
    const auto a = nabla(del(p, j, m), atom, m);
    const auto b = monomial(del(nabla(p, atom, m), j, m), m);
    r.commutation = std::max(r.commutation, max_gap(a, b));
  }
  return r;
}

IdentityReport make_identity(double lhs, double rhs) {
  return IdentityReport{lhs, rhs, std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)})};
}

IdentityReport theorem5_check(const PolyFunctional& p, const TestFunction& theta, int atom, const AtomicMeasure& m) {
  require_poly(m, p, "theorem5_check");
  require_atom(m, atom, "theorem5_check");
  require_length(m, theta, "theorem5_check");
  // left: multiply in the monomial basis, transform
  const double lhs = s_transform(wick(pairing_multiply(p, delta_kernel(m, atom), m), m), theta, m);

  const Fock& F = wick(p, m).kernels;
  const Eigen::VectorXd v = m.weights().cwiseProduct(theta);
  const double U = s_derivative(F, atom, 0, v);
  const double dU = s_derivative(F, atom, 1, v);
  const double d2U = s_derivative(F, atom, 2, v);
  const double t = theta[atom];
  return make_identity(lhs, (t + 1.0) * U + (1.0 + 2.0 * t) * dU + t * d2U);
}

IdentityReport theorem5_pairing_check(const PolyFunctional& p, const TestFunction& theta, const TestFunction& xi,
                                      const AtomicMeasure& m) {
  require_poly(m, p, "theorem5_pairing_check");
  require_length(m, theta, "theorem5_pairing_check");
  require_length(m, xi, "theorem5_pairing_check");
  const double lhs = s_transform(wick(pairing_multiply(p, xi, m), m), theta, m);

  const Fock& F = wick(p, m).kernels;
  const Eigen::VectorXd v = m.weights().cwiseProduct(theta);
  const double U = s_derivative(F, 0, 0, v);
  double rhs = l2_inner(m, xi, (theta.array() + 1.0).matrix()) * U;
  for (int x = 0; x < m.atoms(); ++x) {
    if (xi[x] == 0.0) continue;
    rhs += m.weight(x) * xi[x] *
           ((1.0 + 2.0 * theta[x]) * s_derivative(F, x, 1, v) + theta[x] * s_derivative(F, x, 2, v));
  }
  return make_identity(lhs, rhs);
}

IdentityReport theorem6_check(const PolyFunctional& p, int atom, const OmegaSample& w, const AtomicMeasure& m,
                              const QuadratureRule& q) {
  return make_identity(del_integral(p, atom, w, q, m), evaluate(del(p, atom, m), w, m));
}

IdentityReport theorem6_annihilation_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                                           const AtomicMeasure& m, const QuadratureRule& q) {
  const PolyFunctional a{Basis::GammaWick, annihilate1(xi, wick(p, m).kernels, m)};
  return make_identity(evaluate(a, w, m), annihilate1_integral(p, xi, m, w, q));
}

IdentityReport theorem7_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                              const AtomicMeasure& m) {
  require_poly(m, p, "theorem7_check");
  require_length(m, xi, "theorem7_check");
  const double lhs = evaluate(PolyFunctional{Basis::GammaWick, create(xi, wick(p, m).kernels)}, w, m);

  const auto pm = monomial(p, m);
  const double phi = evaluate(pm, w, m);
  const double coord = coordinate_pairing(xi, w, [&](int x) {
    const auto d1 = nabla(pm, x, m);
    return evaluate(nabla(d1, x, m), w, m) - 2.0 * evaluate(d1, w, m) + phi;
  });
  const double rhs = coord + evaluate(directional_derivative(pm, xi, m), w, m) - integrate(m, xi) * phi;
  return make_identity(lhs, rhs);
}

IdentityReport theorem8_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                              const AtomicMeasure& m) {
  require_poly(m, p, "theorem8_check");
  require_length(m, xi, "theorem8_check");
  const double lhs = evaluate(PolyFunctional{Basis::GammaWick, neutral(xi, wick(p, m).kernels)}, w, m);

  const auto pm = monomial(p, m);
  const double coord = coordinate_pairing(xi, w, [&](int x) {
    const auto d1 = nabla(pm, x, m);
    return evaluate(d1, w, m) - evaluate(nabla(d1, x, m), w, m);
  });
  return make_identity(lhs, coord - evaluate(directional_derivative(pm, xi, m), w, m));
}

Theorem9Report theorem9_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                              const AtomicMeasure& m, const QuadratureRule& q) {
  require_poly(m, p, "theorem9_check");
  require_length(m, xi, "theorem9_check");
  const double lhs = evaluate(PolyFunctional{Basis::GammaWick, annihilate2(xi, wick(p, m).kernels)}, w, m);

  const auto pm = monomial(p, m);
  const double phi = evaluate(pm, w, m);
  const double common = coordinate_pairing(xi, w, [&](int x) { return evaluate(nabla(nabla(pm, x, m), x, m), w, m); }) +
                        evaluate(directional_derivative(pm, xi, m), w, m);
  double grad_int = 0.0, value_int = 0.0;
  for (int x = 0; x < m.atoms(); ++x) {
    if (xi[x] == 0.0) continue;
    const double c = m.weight(x) * xi[x];
    grad_int += c * shifted_value_integral(nabla(pm, x, m), x, w, q, m);
    value_int += c * shifted_value_integral(pm, x, w, q, m);
  }
  const double mean_term = integrate(m, xi) * phi;

  Theorem9Report r;
  r.nabla_form = make_identity(lhs, common - grad_int);
  r.shift_form = make_identity(lhs, common - value_int + mean_term);
  r.printed_sign_deviation = std::abs(common - value_int - mean_term - lhs);
  return r;
}

IdentityReport multiplication_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                                    const AtomicMeasure& m) {
  require_poly(m, p, "multiplication_check");
  require_length(m, xi, "multiplication_check");
  double lhs = 0.0;
  for (int x = 0; x < m.atoms(); ++x)
    if (xi[x] != 0.0) lhs += m.weight(x) * xi[x] * evaluate(coordinate_multiply(p, x, m), w, m);
  return make_identity(lhs, w.pair(xi) * evaluate(p, w, m));
}

IdentityReport reassembly_check(const PolyFunctional& p, const TestFunction& xi, const OmegaSample& w,
                                const AtomicMeasure& m, const QuadratureRule& q) {
  const double creation = theorem7_check(p, xi, w, m).rhs;
  const double neutral_part = theorem8_check(p, xi, w, m).rhs;
  const double a2 = theorem9_check(p, xi, w, m, q).nabla_form.rhs;
  const double a1 = annihilate1_integral(p, xi, m, w, q);
  const double phi = evaluate(p, w, m);
  return make_identity(creation + 2.0 * neutral_part + integrate(m, xi) * phi + a1 + a2, w.pair(xi) * phi);
}

MCEstimate mc_a1_adjointness(const AtomicMeasure& m, const PolyFunctional& phi, const PolyFunctional& psi,
                             const TestFunction& xi, const SamplerConfig& cfg, const QuadratureRule& q) {
  cfg.validate();
  if (cfg.mode != SamplerMode::CompoundPoisson)
    throw ContractViolation("mc_a1_adjointness: needs individual jumps (CompoundPoisson)");
  require_poly(m, phi, "mc_a1_adjointness");
  require_poly(m, psi, "mc_a1_adjointness");
  require_length(m, xi, "mc_a1_adjointness");
  const auto phm = monomial(phi, m), psm = monomial(psi, m);
  std::vector<double> values(static_cast<std::size_t>(cfg.n_samples));
  parallel_samples(cfg.n_samples, cfg.seed, cfg.threads, [&](std::int64_t i, SplitMix64& rng) {
    const auto conf = sample_configuration(m, cfg, rng);
    const OmegaSample w = conf.aggregate();
    values[i] = a1_plus_explicit(phm, xi, conf, m) * evaluate(psm, w, m) -
                evaluate(phm, w, m) * annihilate1_integral(psm, xi, m, w, q);
  });
  return estimate_from(values);
}

}  // namespace gwn
