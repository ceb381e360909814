#include "gwn/wick.hpp"

#include <cmath>
#include <map>

#include "gwn/ext_fock.hpp"
#include "gwn/field_ops.hpp"

namespace gwn {

OmegaSample::OmegaSample(Eigen::VectorXd masses) : masses_(std::move(masses)) {
  for (Eigen::Index i = 0; i < masses_.size(); ++i)
    if (!(masses_[i] >= 0.0) || !std::isfinite(masses_[i]))
      throw DomainError("OmegaSample: masses must be finite and nonnegative");
}

double OmegaSample::pair(const TestFunction& xi) const {
  if (xi.size() != masses_.size()) throw DimensionError("OmegaSample::pair: length mismatch");
  return masses_.dot(xi);
}

OmegaSample OmegaSample::shifted(int atom, double s) const {
  Eigen::VectorXd next = masses_;
  next[atom] += s;
  return OmegaSample(std::move(next));
}

const char* basis_name(Basis b) { return b == Basis::Monomial ? "monomial" : "wick"; }

PolyFunctional PolyFunctional::constant(Basis b, int atoms, double c) {
  PolyFunctional p{b, Fock(atoms, 0)};
  p.kernels[0][0] = c;
  return p;
}

PolyFunctional PolyFunctional::single(Basis b, const Tensor& t) { return PolyFunctional{b, Fock::single(t)}; }

namespace {

void require_sample(const AtomicMeasure& m, const OmegaSample& w, const char* what) {
  if (w.atoms() != m.atoms()) throw DimensionError(std::string(what) + ": sample/measure atom count mismatch");
}

void require_poly(const AtomicMeasure& m, const PolyFunctional& p, const char* what) {
  if (p.atoms() != m.atoms()) throw DimensionError(std::string(what) + ": functional/measure atom count mismatch");
}

}  // namespace

std::vector<double> wick_pair_rank_one(const OmegaSample& w, const TestFunction& xi, const AtomicMeasure& m, int N) {
  require_sample(m, w, "wick_pair_rank_one");
  require_length(m, xi, "wick_pair_rank_one");
  if (N < 0) throw ContractViolation("wick_pair_rank_one: negative N");

  // power sums <omega, xi^k> and <xi^k>
  std::vector<double> pw(N + 1, 0.0), ps(N + 1, 0.0);
  for (int k = 1; k <= N; ++k) {
    const TestFunction pk = xi.array().pow(k).matrix();
    pw[k] = w.pair(pk);
    ps[k] = integrate(m, pk);
  }

  // Q(lambda) = <:omega^{|lambda|}:, ⊗̂_j xi^{lambda_j}>, lambda sorted ascending.
  // Peeling one factor xi^k uses I(a(xi^k) F) = <omega, xi^k> I(F).
  std::map<std::vector<int>, double> memo;
  auto Q = [&](auto&& self, const std::vector<int>& lambda) -> double {
    if (lambda.empty()) return 1.0;
    if (auto it = memo.find(lambda); it != memo.end()) return it->second;
    const int k = lambda.back();
    const std::vector<int> mu(lambda.begin(), lambda.end() - 1);
    const int n = static_cast<int>(mu.size());
    double v = (pw[k] - ps[k]) * self(self, mu);
    for (int j = 0; j < n; ++j) {
      std::vector<int> nu = mu;
      nu[j] += k;
      std::sort(nu.begin(), nu.end());
      v -= 2.0 * self(self, nu);
    }
    for (int j = 0; j < n; ++j) {
      std::vector<int> nu = mu;
      nu.erase(nu.begin() + j);
      v -= ps[mu[j] + k] * self(self, nu);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<int> nu;
        for (int r = 0; r < n; ++r)
          if (r != i && r != j) nu.push_back(mu[r]);
        nu.push_back(mu[i] + mu[j] + k);
        std::sort(nu.begin(), nu.end());
        v -= 2.0 * self(self, nu);
      }
    memo.emplace(lambda, v);
    return v;
  };

  std::vector<double> q;
  for (int n = 0; n <= N; ++n) q.push_back(Q(Q, std::vector<int>(n, 1)));
  return q;
}

std::vector<Tensor> wick_kernels(const OmegaSample& w, const AtomicMeasure& m, int N) {
  require_sample(m, w, "wick_kernels");
  if (N < 0) throw ContractViolation("wick_kernels: negative N");
  const int atoms = m.atoms();
  const Eigen::VectorXd& wt = m.weights();
  const Eigen::VectorXd density = w.masses().cwiseQuotient(wt);

  std::vector<Tensor> K;
  K.push_back(Tensor::constant(atoms, 1.0));
  if (N >= 1) {
    Tensor k1(atoms, 1);
    for (int i = 0; i < atoms; ++i) k1[i] = density[i] - 1.0;
    K.push_back(k1);
  }
  std::array<int, 32> atom{}, count{};
  std::array<int, 32> pos{};
  for (int n = 1; n < N; ++n) {
    // build K_{n+1} from K_n and K_{n-1}
    Tensor next(atoms, n + 1);
    const Tensor& Kn = K[n];
    const Tensor& Km = K[n - 1];
    const double inv1 = 1.0 / (n + 1);
    const double inv2 = inv1 / n;
    const double inv3 = n >= 2 ? inv2 / (n - 1) : 0.0;
    for (std::int64_t r = 0; r < next.size(); ++r) {
      const auto t = next.tuple(r);
      int distinct = 0;
      for (int p = 0; p <= n; ++p) {
        if (p == 0 || t[p] != t[p - 1]) {
          atom[distinct] = t[p];
          pos[distinct] = p;
          count[distinct++] = 0;
        }
        ++count[distinct - 1];
      }
      double t1 = 0.0, t2 = 0.0, t3 = 0.0, t4 = 0.0, t5 = 0.0;
      for (int d = 0; d < distinct; ++d) {
        const int a = atom[d];
        const double c = count[d];
        const double kn = Kn[rank_without(t, pos[d])];
        t1 += c * density[a] * kn;
        t5 += c * kn;
        if (count[d] >= 2) {
          t4 += c * (c - 1) * kn / wt[a];
          const double km = Km[rank_without2(t, pos[d], pos[d] + 1)];
          t2 += c * (c - 1) * km / wt[a];
          if (count[d] >= 3) t3 += c * (c - 1) * (c - 2) * km / (wt[a] * wt[a]);
        }
      }
      next[r] = inv1 * t1 - n * inv2 * t2 - n * (n - 1) * inv3 * t3 - 2.0 * n * inv2 * t4 - inv1 * t5;
    }
    K.push_back(std::move(next));
  }
  return K;
}

Tensor wick_kernel(const OmegaSample& w, const AtomicMeasure& m, int n) { return wick_kernels(w, m, n)[n]; }

double weighted_pairing(const AtomicMeasure& m, const Tensor& a, const Tensor& b) { return fock_inner_n(m, a, b); }

namespace {

// Wick-basis images of the monomials prod_k s_{t_k} for every multiset t of degree <= N,
// built by s_y * F  <->  a(chi_y) F.
class MonomialColumns {
 public:
  MonomialColumns(const AtomicMeasure& m, int N) : atoms_(m.atoms()) {
    columns_.resize(N + 1);
    columns_[0].push_back(Fock::vacuum(atoms_));
    std::vector<TestFunction> chi;
    for (int y = 0; y < atoms_; ++y) chi.push_back(indicator(m, y));
    for (int n = 1; n <= N; ++n) {
      const auto& sp = multi_index_space(atoms_, n);
      columns_[n].reserve(sp.size());
      for (std::int64_t r = 0; r < sp.size(); ++r) {
        const auto t = sp.tuple(r);
        const int y = t[n - 1];
        columns_[n].push_back(gamma_field(chi[y], columns_[n - 1][rank_without(t, n - 1)], m));
      }
    }
  }

  // Wick kernels of <omega^{⊗n}, f>.
  Fock image(const Tensor& f) const {
    const int n = f.degree();
    Fock out(atoms_, n);
    for (std::int64_t r = 0; r < f.size(); ++r) {
      if (f[r] == 0.0) continue;
      out += (f.space().arrangements(r) * f[r]) * columns_[n][r];
    }
    return out;
  }

 private:
  int atoms_;
  std::vector<std::vector<Fock>> columns_;
};

}  // namespace

PolyFunctional monomial_to_wick(const PolyFunctional& p, const AtomicMeasure& m) {
  require_poly(m, p, "monomial_to_wick");
  if (p.basis == Basis::GammaWick) return p;
  const MonomialColumns cols(m, p.degree());
  Fock out(p.atoms(), p.degree());
  for (int n = 0; n <= p.degree(); ++n) out += cols.image(p.kernels[n]);
  out.resize(p.degree());
  return PolyFunctional{Basis::GammaWick, out};
}

PolyFunctional wick_to_monomial(const PolyFunctional& p, const AtomicMeasure& m) {
  require_poly(m, p, "wick_to_monomial");
  if (p.basis == Basis::Monomial) return p;
  const MonomialColumns cols(m, p.degree());
  Fock rest = p.kernels;
  Fock out(p.atoms(), p.degree());
  for (int n = p.degree(); n >= 0; --n) {
    // the top Wick kernel equals the top monomial kernel
    out[n] = rest[n];
    rest -= cols.image(out[n]);
  }
  return PolyFunctional{Basis::Monomial, out};
}

PolyFunctional to_basis(const PolyFunctional& p, Basis b, const AtomicMeasure& m) {
  return b == Basis::GammaWick ? monomial_to_wick(p, m) : wick_to_monomial(p, m);
}

double evaluate(const PolyFunctional& p, const OmegaSample& w, const AtomicMeasure& m) {
  require_poly(m, p, "evaluate");
  require_sample(m, w, "evaluate");
  double total = 0.0;
  if (p.basis == Basis::Monomial) {
    for (int n = 0; n <= p.degree(); ++n) total += full_contraction(p.kernels[n], w.masses());
    return total;
  }
  const auto K = wick_kernels(w, m, p.degree());
  for (int n = 0; n <= p.degree(); ++n) total += weighted_pairing(m, K[n], p.kernels[n]);
  return total;
}

WickExp wick_exp(const OmegaSample& w, const TestFunction& phi, const AtomicMeasure& m, int N) {
  require_length(m, phi, "wick_exp");
  if (phi.size() > 0 && !(phi.cwiseAbs().maxCoeff() < 1.0)) throw DomainError("wick_exp: need |phi_i| < 1");
  const auto q = wick_pair_rank_one(w, phi, m, N);
  WickExp r;
  double inv_fact = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) inv_fact /= n;
    r.truncated_series += q[n] * inv_fact;
  }
  double expo = 0.0;
  for (int i = 0; i < m.atoms(); ++i) expo += w.mass(i) * phi[i] / (1.0 + phi[i]) - m.weight(i) * std::log1p(phi[i]);
  r.closed_form = std::exp(expo);
  return r;
}

PolyFunctional wick_product(const PolyFunctional& p, const PolyFunctional& q) {
  if (p.basis != Basis::GammaWick || q.basis != Basis::GammaWick)
    throw ContractViolation("wick_product: both factors must be in the Wick basis");
  if (p.atoms() != q.atoms()) throw DimensionError("wick_product: atom count mismatch");
  Fock out(p.atoms(), p.degree() + q.degree());
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; j <= q.degree(); ++j) out[i + j] += sym_product(p.kernels[i], q.kernels[j]);
  return PolyFunctional{Basis::GammaWick, out};
}

double s_transform(const PolyFunctional& p, const TestFunction& theta, const AtomicMeasure& m) {
  if (p.basis != Basis::GammaWick) throw ContractViolation("s_transform: functional must be in the Wick basis");
  require_poly(m, p, "s_transform");
  require_length(m, theta, "s_transform");
  const Eigen::VectorXd v = m.weights().cwiseProduct(theta);
  double total = 0.0;
  for (int n = 0; n <= p.degree(); ++n) total += full_contraction(p.kernels[n], v);
  return total;
}

PolyFunctional delta_functional(const OmegaSample& upsilon, const AtomicMeasure& m, int N) {
  auto K = wick_kernels(upsilon, m, N);
  for (int n = 0; n <= N; ++n) K[n] *= 1.0 / factorial(n);
  return PolyFunctional{Basis::GammaWick, Fock(std::move(K))};
}

double dual_pairing(const PolyFunctional& F, const Fock& f, const AtomicMeasure& m) {
  if (F.basis != Basis::GammaWick) throw ContractViolation("dual_pairing: F must be in the Wick basis");
  require_poly(m, F, "dual_pairing");
  const int N = std::min(F.degree(), f.max_degree());
  double total = 0.0;
  for (int n = 0; n <= N; ++n) total += factorial(n) * weighted_pairing(m, F.kernels[n], f[n]);
  return total;
}

}  // namespace gwn
