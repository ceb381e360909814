#include <doctest.h>

#include <complex>

#include "gwn/sym_tensor.hpp"
#include "support.hpp"

using namespace gwn;

TEST_CASE("multi-index ranking is a bijection onto sorted tuples") {
  for (int m = 1; m <= 5; ++m)
    for (int n = 0; n <= 6; ++n) {
      const auto& sp = multi_index_space(m, n);
      CHECK(sp.size() == static_cast<std::int64_t>(binomial(m + n - 1, n)));
      for (std::int64_t r = 0; r < sp.size(); ++r) {
        const auto t = sp.tuple(r);
        CHECK(std::is_sorted(t.begin(), t.end()));
        CHECK(sp.rank_sorted(t) == r);
      }
    }
  const auto& sp = multi_index_space(3, 3);
  const std::vector<int> t{2, 0, 1};
  CHECK(sp.rank_any(t) == sp.rank_sorted(std::vector<int>{0, 1, 2}));
  // arrangements of {0,0,1}: 3
  CHECK(sp.arrangements(sp.rank_sorted(std::vector<int>{0, 0, 1})) == 3.0);
}

TEST_CASE("rank_one: frozen examples") {
  CHECK(rank_one(TestFunction::Constant(1, 2.0), 3)({0, 0, 0}) == 8.0);
  const auto t0 = rank_one(TestFunction::Constant(3, 5.0), 0);
  CHECK(t0.degree() == 0);
  CHECK(t0[0] == 1.0);
  TestFunction f(2);
  f << 1, 2;
  const auto t = rank_one(f, 2);
  CHECK(t({0, 0}) == 1.0);
  CHECK(t({0, 1}) == 2.0);
  CHECK(t({1, 0}) == 2.0);
  CHECK(t({1, 1}) == 4.0);
}

TEST_CASE("sym_product: frozen examples") {
  test::Rng rng(3);
  const auto f = test::random_vec(rng, 3);
  const auto ff = sym_product(rank_one(f, 1), rank_one(f, 1));
  CHECK((ff.values() - rank_one(f, 2).values()).cwiseAbs().maxCoeff() == 0.0);

  const auto b = test::random_tensor(rng, 3, 3);
  const auto cb = sym_product(Tensor::constant(3, 2.5), b);
  CHECK((cb.values() - 2.5 * b.values()).cwiseAbs().maxCoeff() == 0.0);

  TestFunction e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(sym_product(rank_one(e0, 1), rank_one(e1, 1))({0, 1}) == 0.5);
  CHECK_THROWS_AS(sym_product(Tensor(2, 1), Tensor(3, 1)), DimensionError);
}

TEST_CASE("sym_product agrees with permutation-average oracle") {
  test::Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = test::uniform_int(rng, 1, 3);
    const int p = test::uniform_int(rng, 0, 3), q = test::uniform_int(rng, 0, 3);
    const auto a = test::random_tensor(rng, m, p), b = test::random_tensor(rng, m, q);
    const auto ab = sym_product(a, b);
    for (std::int64_t r = 0; r < ab.size(); ++r) {
      const auto t = ab.tuple(r);
      const std::vector<int> x(t.begin(), t.end());
      CHECK(ab[r] == doctest::Approx(test::brute_sym_product_at(a, b, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("sym_product is commutative and associative; rank-one powers add") {
  test::Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = test::uniform_int(rng, 1, 4);
    const auto a = test::random_tensor(rng, m, test::uniform_int(rng, 0, 3));
    const auto b = test::random_tensor(rng, m, test::uniform_int(rng, 0, 3));
    const auto c = test::random_tensor(rng, m, test::uniform_int(rng, 0, 2));
    const auto ab = sym_product(a, b), ba = sym_product(b, a);
    CHECK((ab.values() - ba.values()).cwiseAbs().maxCoeff() <= 1e-12 * (1 + ab.values().cwiseAbs().maxCoeff()));
    const auto l = sym_product(ab, c), r = sym_product(a, sym_product(b, c));
    CHECK((l.values() - r.values()).cwiseAbs().maxCoeff() <= 1e-12 * (1 + l.values().cwiseAbs().maxCoeff()));

    TestFunction f(m);
    for (int i = 0; i < m; ++i) f[i] = test::uniform_int(rng, -3, 3);  // integers: exact arithmetic
    const int x = test::uniform_int(rng, 0, 3), y = test::uniform_int(rng, 0, 3);
    CHECK(sym_product(rank_one(f, x), rank_one(f, y)).values() == rank_one(f, x + y).values());
  }
}

TEST_CASE("multiply_pointwise_first_slot: frozen examples") {
  TestFunction f(2), g(2);
  f << 1, 2;
  g << 3, 0;
  const auto t = multiply_pointwise_first_slot(rank_one(f, 2), g);
  CHECK(t({0, 0}) == 3.0);
  CHECK(t({0, 1}) == 3.0);
  CHECK(t({1, 1}) == 0.0);

  test::Rng rng(1);
  const auto r = test::random_tensor(rng, 3, 3);
  CHECK(multiply_pointwise_first_slot(r, TestFunction::Ones(3)).values().isApprox(r.values(), 1e-15));

  // rank one: equals (xi phi) ⊗̂ phi^{n-1}
  const auto phi = test::random_vec(rng, 3), xi = test::random_vec(rng, 3);
  const auto lhs = multiply_pointwise_first_slot(rank_one(phi, 3), xi);
  const TestFunction xiphi = xi.cwiseProduct(phi);
  const auto rhs = sym_product(rank_one(xiphi, 1), rank_one(phi, 2));
  CHECK((lhs.values() - rhs.values()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK_THROWS_AS(multiply_pointwise_first_slot(Tensor::constant(3, 1.0), xi), ContractViolation);
}

TEST_CASE("diagonal_restrict: frozen examples") {
  test::Rng rng(2);
  const auto t = test::random_tensor(rng, 3, 3);
  const auto id = diagonal_restrict(t, {{1}, {2}, {3}});
  CHECK(id.arity == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) CHECK(id({a, b, c}) == t({a, b, c}));

  TestFunction f(3);
  f << 1.5, -2, 0.25;
  const auto d = diagonal_restrict(rank_one(f, 2), {{1, 2}});
  CHECK(d.arity == 1);
  for (int i = 0; i < 3; ++i) CHECK(d({i}) == f[i] * f[i]);

  Tensor s(2, 2);
  s.at(std::vector<int>{0, 0}) = 7;   // a
  s.at(std::vector<int>{0, 1}) = -1;  // b
  s.at(std::vector<int>{1, 1}) = 4;   // c
  const auto sd = diagonal_restrict(s, {{1, 2}});
  CHECK(sd({0}) == 7.0);
  CHECK(sd({1}) == 4.0);

  CHECK_THROWS_AS(diagonal_restrict(t, {{1, 2}}), ContractViolation);
  CHECK_THROWS_AS(diagonal_restrict(t, {{1, 2}, {2, 3}}), ContractViolation);
  CHECK_THROWS_AS(diagonal_restrict(t, {{1, 2}, {4}}), ContractViolation);
}

TEST_CASE("FockVector arithmetic and padding") {
  auto v = Fock::vacuum(2);
  test::Rng rng(4);
  const auto w = test::random_fock(rng, 2, 3);
  const auto s = v + w;
  CHECK(s.max_degree() == 3);
  CHECK(s[0][0] == 1.0 + w[0][0]);
  CHECK(s.component(7).degree() == 7);
  CHECK(s.component(7).values().isZero());
  CHECK_THROWS_AS(Fock(2, 1) + Fock(3, 1), DimensionError);
  CHECK_THROWS_AS(Fock(std::vector<Tensor>{Tensor(2, 0), Tensor(2, 2)}), ContractViolation);
}

TEST_CASE("complex scalars compile and behave") {
  using C = std::complex<double>;
  Eigen::VectorXcd f(2);
  f << C(1, 1), C(0, 2);
  const auto t = rank_one(f, 2);
  CHECK(t({0, 1}) == C(1, 1) * C(0, 2));
  const auto p = sym_product(t, rank_one(f, 1));
  CHECK(std::abs(p({0, 0, 1}) - C(1, 1) * C(1, 1) * C(0, 2)) < 1e-15);
}
