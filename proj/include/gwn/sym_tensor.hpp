#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "gwn/error.hpp"
#include "gwn/multi_index.hpp"

namespace gwn {

// Symmetric kernel of degree n over m atoms, one coefficient per multiset.
template <typename Scalar = double>
class SymTensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  SymTensor() : SymTensor(1, 0) {}
  SymTensor(int atoms, int degree)
      : space_(&multi_index_space(atoms, degree)), values_(Vector::Zero(space_->size())) {}
  SymTensor(int atoms, int degree, Vector values)
      : space_(&multi_index_space(atoms, degree)), values_(std::move(values)) {
    if (values_.size() != space_->size()) throw DimensionError("SymTensor: value count mismatch");
  }

  static SymTensor constant(int atoms, Scalar c) {
    SymTensor t(atoms, 0);
    t.values_[0] = c;
    return t;
  }

  int atoms() const { return space_->atoms(); }
  int degree() const { return space_->degree(); }
  Eigen::Index size() const { return values_.size(); }
  const MultiIndexSpace& space() const { return *space_; }

  const Vector& values() const { return values_; }
  Vector& values() { return values_; }

  Scalar operator[](std::int64_t rank) const { return values_[rank]; }
  Scalar& operator[](std::int64_t rank) { return values_[rank]; }

  // Value at a tuple in any order.
  Scalar at(std::span<const int> tuple) const { return values_[space_->rank_any(tuple)]; }
  Scalar& at(std::span<const int> tuple) { return values_[space_->rank_any(tuple)]; }
  Scalar operator()(std::initializer_list<int> tuple) const {
    return at(std::span<const int>(tuple.begin(), tuple.size()));
  }
  std::span<const int> tuple(std::int64_t rank) const { return space_->tuple(rank); }

  SymTensor& operator+=(const SymTensor& o) {
    check_same(o);
    values_ += o.values_;
    return *this;
  }
  SymTensor& operator-=(const SymTensor& o) {
    check_same(o);
    values_ -= o.values_;
    return *this;
  }
  SymTensor& operator*=(Scalar c) {
    values_ *= c;
    return *this;
  }
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(Scalar c, SymTensor a) { return a *= c; }
  friend SymTensor operator*(SymTensor a, Scalar c) { return a *= c; }
  friend SymTensor operator-(SymTensor a) { return a *= Scalar(-1); }

  void check_same(const SymTensor& o) const {
    if (o.atoms() != atoms() || o.degree() != degree())
      throw DimensionError("SymTensor shape mismatch");
  }

 private:
  const MultiIndexSpace* space_;
  Vector values_;
};

// phi^{⊗n}: value prod_k f(i_k).
template <typename Derived>
SymTensor<typename Derived::Scalar> rank_one(const Eigen::MatrixBase<Derived>& f, int n) {
  using Scalar = typename Derived::Scalar;
  const int m = static_cast<int>(f.size());
  if (n < 0) throw ContractViolation("rank_one: negative degree");
  SymTensor<Scalar> out(m, n);
  for (std::int64_t r = 0; r < out.size(); ++r) {
    Scalar v(1);
    for (int i : out.tuple(r)) v *= f(i);
    out[r] = v;
  }
  return out;
}

namespace detail {

// Sum over sub-multisets u of t (|u| = p) of prod_a C(c_a, u_a) * a(u) * b(t - u).
template <typename Scalar>
Scalar split_sum(const SymTensor<Scalar>& a, const SymTensor<Scalar>& b, std::span<const int> t) {
  const int n = static_cast<int>(t.size());
  const int p = a.degree();
  std::array<int, 32> atom{}, count{}, take{};
  int distinct = 0;
  for (int k = 0; k < n; ++k) {
    if (k == 0 || t[k] != t[k - 1]) {
      atom[distinct] = t[k];
      count[distinct++] = 0;
    }
    ++count[distinct - 1];
  }
  std::array<int, 32> ubuf{}, vbuf{};
  Scalar total(0);
  // odometer over take[d] in [0, count[d]] with sum p
  auto recurse = [&](auto&& self, int d, int remaining) -> void {
    if (d == distinct) {
      if (remaining != 0) return;
      int nu = 0, nv = 0;
      double mult = 1.0;
      for (int e = 0; e < distinct; ++e) {
        mult *= static_cast<double>(binomial(count[e], take[e]));
        for (int r = 0; r < take[e]; ++r) ubuf[nu++] = atom[e];
        for (int r = take[e]; r < count[e]; ++r) vbuf[nv++] = atom[e];
      }
      total += Scalar(mult) * a[a.space().rank_sorted({ubuf.data(), std::size_t(nu)})] *
               b[b.space().rank_sorted({vbuf.data(), std::size_t(nv)})];
      return;
    }
    const int hi = std::min(count[d], remaining);
    for (int x = 0; x <= hi; ++x) {
      take[d] = x;
      self(self, d + 1, remaining - x);
    }
  };
  recurse(recurse, 0, p);
  return total;
}

}  // namespace detail

// a ⊗̂ b: mean over the C(p+q, p) ways of splitting positions between a and b.
template <typename Scalar>
SymTensor<Scalar> sym_product(const SymTensor<Scalar>& a, const SymTensor<Scalar>& b) {
  if (a.atoms() != b.atoms()) throw DimensionError("sym_product: atom count mismatch");
  const int p = a.degree(), q = b.degree();
  if (p == 0) return a[0] * b;
  if (q == 0) return b[0] * a;
  SymTensor<Scalar> out(a.atoms(), p + q);
  const double norm = 1.0 / static_cast<double>(binomial(p + q, p));
  for (std::int64_t r = 0; r < out.size(); ++r) out[r] = Scalar(norm) * detail::split_sum(a, b, out.tuple(r));
  return out;
}

// (1/n) sum_p g(i_p) * t(i): multiply one slot by g and re-symmetrize.
template <typename Scalar, typename Derived>
SymTensor<Scalar> multiply_pointwise_first_slot(const SymTensor<Scalar>& t, const Eigen::MatrixBase<Derived>& g) {
  if (t.degree() == 0) throw ContractViolation("multiply_pointwise_first_slot: degree-0 tensor has no slot");
  if (g.size() != t.atoms()) throw DimensionError("multiply_pointwise_first_slot: length mismatch");
  SymTensor<Scalar> out = t;
  const double inv = 1.0 / t.degree();
  for (std::int64_t r = 0; r < out.size(); ++r) {
    Scalar s(0);
    for (int i : t.tuple(r)) s += Scalar(g(i));
    out[r] *= s * Scalar(inv);
  }
  return out;
}

// Dense array over k-tuples of atoms, row-major (first index slowest).
template <typename Scalar>
struct DiagonalArray {
  int atoms = 1;
  int arity = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;

  Scalar operator()(std::span<const int> j) const {
    std::int64_t idx = 0;
    for (int x : j) idx = idx * atoms + x;
    return values[idx];
  }
  Scalar operator()(std::initializer_list<int> j) const { return (*this)(std::span<const int>(j.begin(), j.size())); }
};

// Evaluate t with all positions of a block set equal. Blocks hold 1-based positions 1..n.
template <typename Scalar>
DiagonalArray<Scalar> diagonal_restrict(const SymTensor<Scalar>& t, const std::vector<std::vector<int>>& blocks) {
  const int n = t.degree();
  std::vector<int> owner(n, -1);
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    if (blocks[b].empty()) throw ContractViolation("diagonal_restrict: empty block");
    for (int pos : blocks[b]) {
      if (pos < 1 || pos > n || owner[pos - 1] != -1)
        throw ContractViolation("diagonal_restrict: blocks do not partition {1..n}");
      owner[pos - 1] = b;
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw ContractViolation("diagonal_restrict: blocks do not cover {1..n}");

  const int m = t.atoms();
  const int k = static_cast<int>(blocks.size());
  DiagonalArray<Scalar> out;
  out.atoms = m;
  out.arity = k;
  std::int64_t total = 1;
  for (int r = 0; r < k; ++r) total *= m;
  out.values.resize(total);
  std::vector<int> j(k, 0), x(n, 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    for (int p = 0; p < n; ++p) x[p] = j[owner[p]];
    out.values[idx] = t.at(x);
    for (int r = k - 1; r >= 0; --r) {
      if (++j[r] < m) break;
      j[r] = 0;
    }
  }
  return out;
}

// sum over ordered tuples of f(x) prod_k v(x_k)
template <typename Scalar, typename Derived>
Scalar full_contraction(const SymTensor<Scalar>& f, const Eigen::MatrixBase<Derived>& v) {
  if (v.size() != f.atoms()) throw DimensionError("full_contraction: length mismatch");
  Scalar total(0);
  for (std::int64_t r = 0; r < f.size(); ++r) {
    Scalar prod(f.space().arrangements(r));
    for (int i : f.tuple(r)) prod *= Scalar(v(i));
    total += prod * f[r];
  }
  return total;
}

// f(a, ·): fix one slot at atom a.
template <typename Scalar>
SymTensor<Scalar> slot_fix(const SymTensor<Scalar>& f, int a) {
  if (f.degree() == 0) throw ContractViolation("slot_fix: degree-0 tensor has no slot");
  if (a < 0 || a >= f.atoms()) throw DimensionError("slot_fix: atom out of range");
  SymTensor<Scalar> out(f.atoms(), f.degree() - 1);
  for (std::int64_t r = 0; r < out.size(); ++r) out[r] = f[rank_with(out.tuple(r), a)];
  return out;
}

// sum_j v_j f(j, ·)
template <typename Scalar, typename Derived>
SymTensor<Scalar> slot_contract(const SymTensor<Scalar>& f, const Eigen::MatrixBase<Derived>& v) {
  if (f.degree() == 0) throw ContractViolation("slot_contract: degree-0 tensor has no slot");
  if (v.size() != f.atoms()) throw DimensionError("slot_contract: length mismatch");
  SymTensor<Scalar> out(f.atoms(), f.degree() - 1);
  for (std::int64_t r = 0; r < out.size(); ++r) {
    Scalar s(0);
    for (int j = 0; j < f.atoms(); ++j) s += Scalar(v(j)) * f[rank_with(out.tuple(r), j)];
    out[r] = s;
  }
  return out;
}

// Finite sequence of kernels of degree 0..N sharing the atom count.
template <typename Scalar = double>
class FockVector {
 public:
  using Tensor = SymTensor<Scalar>;

  FockVector() : FockVector(1, 0) {}
  FockVector(int atoms, int max_degree) : atoms_(atoms) {
    if (max_degree < 0) throw ContractViolation("FockVector: negative degree");
    for (int n = 0; n <= max_degree; ++n) kernels_.emplace_back(atoms, n);
  }
  explicit FockVector(std::vector<Tensor> kernels) : kernels_(std::move(kernels)) {
    if (kernels_.empty()) throw ContractViolation("FockVector: need at least the degree-0 kernel");
    atoms_ = kernels_[0].atoms();
    for (int n = 0; n < static_cast<int>(kernels_.size()); ++n) {
      if (kernels_[n].atoms() != atoms_) throw DimensionError("FockVector: kernels disagree on atom count");
      if (kernels_[n].degree() != n) throw ContractViolation("FockVector: kernel k must have degree k");
    }
  }

  static FockVector vacuum(int atoms) {
    FockVector v(atoms, 0);
    v[0][0] = Scalar(1);
    return v;
  }
  // Vector with a single nonzero component.
  static FockVector single(const Tensor& t) {
    FockVector v(t.atoms(), t.degree());
    v[t.degree()] = t;
    return v;
  }

  int atoms() const { return atoms_; }
  int max_degree() const { return static_cast<int>(kernels_.size()) - 1; }

  const Tensor& operator[](int n) const { return kernels_.at(n); }
  Tensor& operator[](int n) { return kernels_.at(n); }
  // Component n, zero beyond the stored degree.
  Tensor component(int n) const { return n <= max_degree() ? kernels_[n] : Tensor(atoms_, n); }

  const std::vector<Tensor>& kernels() const { return kernels_; }

  void resize(int max_degree) {
    if (max_degree < 0) throw ContractViolation("FockVector: negative degree");
    while (this->max_degree() > max_degree) kernels_.pop_back();
    while (this->max_degree() < max_degree) kernels_.emplace_back(atoms_, this->max_degree() + 1);
  }
  // Drop trailing zero kernels (degree 0 stays).
  void trim() {
    while (max_degree() > 0 && kernels_.back().values().isZero(0.0)) kernels_.pop_back();
  }

  FockVector& operator+=(const FockVector& o) {
    if (o.atoms_ != atoms_) throw DimensionError("FockVector atom count mismatch");
    if (o.max_degree() > max_degree()) resize(o.max_degree());
    for (int n = 0; n <= o.max_degree(); ++n) kernels_[n] += o.kernels_[n];
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    if (o.atoms_ != atoms_) throw DimensionError("FockVector atom count mismatch");
    if (o.max_degree() > max_degree()) resize(o.max_degree());
    for (int n = 0; n <= o.max_degree(); ++n) kernels_[n] -= o.kernels_[n];
    return *this;
  }
  FockVector& operator*=(Scalar c) {
    for (auto& k : kernels_) k *= c;
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(Scalar c, FockVector a) { return a *= c; }
  friend FockVector operator*(FockVector a, Scalar c) { return a *= c; }

 private:
  int atoms_ = 1;
  std::vector<Tensor> kernels_;
};

// Largest coefficient difference across all degrees (missing kernels count as zero).
template <typename Scalar>
double max_abs_difference(const FockVector<Scalar>& a, const FockVector<Scalar>& b) {
  const int N = std::max(a.max_degree(), b.max_degree());
  double d = 0.0;
  for (int n = 0; n <= N; ++n) {
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> diff = a.component(n).values() - b.component(n).values();
    if (diff.size() > 0) d = std::max(d, static_cast<double>(diff.cwiseAbs().maxCoeff()));
  }
  return d;
}

template <typename Scalar>
double max_abs_coefficient(const FockVector<Scalar>& a) {
  double d = 0.0;
  for (const auto& k : a.kernels())
    if (k.size() > 0) d = std::max(d, static_cast<double>(k.values().cwiseAbs().maxCoeff()));
  return d;
}

using Tensor = SymTensor<double>;
using Fock = FockVector<double>;

}  // namespace gwn
