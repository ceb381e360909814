#include <doctest.h>

#include "gwn/field_ops.hpp"
#include "support.hpp"

using namespace gwn;

namespace {
Tensor vec1(const TestFunction& f) { return rank_one(f, 1); }
double maxdiff(const Tensor& a, const Tensor& b) { return (a.values() - b.values()).cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("create: frozen examples") {
  test::Rng rng(1);
  const auto xi = test::random_vec(rng, 3), phi = test::random_vec(rng, 3);
  const auto a = create(xi, Fock::vacuum(3));
  CHECK(a.max_degree() == 1);
  CHECK(a[0][0] == 0.0);
  CHECK(maxdiff(a[1], vec1(xi)) == 0.0);
  const auto b = create(xi, Fock::single(vec1(phi)));
  CHECK(maxdiff(b[2], sym_product(vec1(xi), vec1(phi))) <= 1e-15);
  CHECK(max_abs_coefficient(create(TestFunction::Zero(3), test::random_fock(rng, 3, 3))) == 0.0);
}

TEST_CASE("neutral: frozen examples") {
  test::Rng rng(2);
  const auto xi = test::random_vec(rng, 3), phi = test::random_vec(rng, 3);
  CHECK(neutral(xi, Fock::vacuum(3))[0][0] == 0.0);
  const TestFunction xiphi = xi.cwiseProduct(phi);
  CHECK(maxdiff(neutral(xi, Fock::single(vec1(phi)))[1], vec1(xiphi)) <= 1e-15);
  const auto r = neutral(xi, Fock::single(rank_one(phi, 2)))[2];
  CHECK(maxdiff(r, 2.0 * sym_product(vec1(xiphi), vec1(phi))) <= 1e-15);
}

TEST_CASE("annihilate1: frozen examples") {
  test::Rng rng(3);
  const auto m = test::random_measure(rng, 3);
  const auto xi = test::random_vec(rng, 3), phi = test::random_vec(rng, 3);
  CHECK(max_abs_coefficient(annihilate1(xi, Fock::vacuum(3), m)) == 0.0);
  CHECK(annihilate1(xi, Fock::single(vec1(phi)), m)[0][0] == doctest::Approx(l2_inner(m, xi, phi)));
  const auto r = annihilate1(xi, Fock::single(rank_one(phi, 2)), m)[1];
  CHECK(maxdiff(r, 2.0 * l2_inner(m, xi, phi) * vec1(phi)) <= 1e-15);
}

TEST_CASE("annihilate2: frozen examples") {
  test::Rng rng(4);
  const auto xi = test::random_vec(rng, 3), phi = test::random_vec(rng, 3);
  CHECK(max_abs_coefficient(annihilate2(xi, Fock::single(vec1(phi)))) == 0.0);
  const TestFunction xiphi2 = xi.cwiseProduct(phi).cwiseProduct(phi);
  CHECK(maxdiff(annihilate2(xi, Fock::single(rank_one(phi, 2)))[1], 2.0 * vec1(xiphi2)) <= 1e-15);
  CHECK(maxdiff(annihilate2(xi, Fock::single(rank_one(phi, 3)))[2], 6.0 * sym_product(vec1(xiphi2), vec1(phi))) <=
        1e-14);
}

TEST_CASE("gamma_field: frozen examples") {
  test::Rng rng(5);
  const auto m = test::random_measure(rng, 3);
  const auto xi = test::random_vec(rng, 3), phi = test::random_vec(rng, 3);
  const auto v = gamma_field(xi, Fock::vacuum(3), m);
  CHECK(v[0][0] == doctest::Approx(integrate(m, xi)));
  CHECK(maxdiff(v[1], vec1(xi)) == 0.0);
  CHECK(max_abs_coefficient(gamma_field(TestFunction::Zero(3), test::random_fock(rng, 3, 3), m)) == 0.0);
  const auto g = gamma_field(xi, Fock::single(vec1(phi)), m);
  const TestFunction expect = 2.0 * xi.cwiseProduct(phi) + integrate(m, xi) * phi;
  CHECK(maxdiff(g[1], vec1(expect)) <= 1e-15);
}

TEST_CASE("general-kernel actions agree with the rank-one formulas by linearity") {
  test::Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int atoms = test::uniform_int(rng, 1, 4), n = test::uniform_int(rng, 2, 5);
    const auto m = test::random_measure(rng, atoms);
    const auto xi = test::random_vec(rng, atoms);
    // f = sum_k c_k phi_k^{⊗n}
    Tensor f(atoms, n), a0(atoms, n), a1(atoms, n - 1), a2(atoms, n - 1);
    for (int k = 0; k < 3; ++k) {
      const auto phi = test::random_vec(rng, atoms);
      const double c = test::uniform(rng, -1, 1);
      const TestFunction xiphi = xi.cwiseProduct(phi), xiphi2 = xiphi.cwiseProduct(phi);
      f += c * rank_one(phi, n);
      a0 += (c * n) * sym_product(vec1(xiphi), rank_one(phi, n - 1));
      a1 += (c * n * l2_inner(m, xi, phi)) * rank_one(phi, n - 1);
      a2 += (c * n * (n - 1)) * (n >= 2 ? sym_product(vec1(xiphi2), rank_one(phi, n - 2)) : Tensor(atoms, n - 1));
    }
    CHECK(maxdiff(neutral_kernel(xi, f), a0) <= 1e-13);
    CHECK(maxdiff(annihilate1_kernel(xi, f, m), a1) <= 1e-13);
    CHECK(maxdiff(annihilate2_kernel(xi, f), a2) <= 1e-12);
  }
}

TEST_CASE("adjointness, hermiticity and commutativity on random vectors") {
  test::Rng rng(7);
  double adj = 0.0, herm = 0.0, comm = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int atoms = test::uniform_int(rng, 1, 3), N = test::uniform_int(rng, 0, 4);
    const auto m = test::random_measure(rng, atoms);
    const auto xi = test::random_vec(rng, atoms), xi2 = test::random_vec(rng, atoms);
    const auto f = test::random_fock(rng, atoms, N), g = test::random_fock(rng, atoms, N + 1);

    const double l = ext_inner(m, create(xi, f), g);
    const double r = ext_inner(m, f, annihilate1(xi, g, m) + annihilate2(xi, g));
    const double scale = std::sqrt(ext_inner(m, create(xi, f), create(xi, f)) * ext_inner(m, g, g)) + 1e-300;
    adj = std::max(adj, std::abs(l - r) / scale);

    const double hl = ext_inner(m, gamma_field(xi, f, m), g), hr = ext_inner(m, f, gamma_field(xi, g, m));
    herm = std::max(herm, std::abs(hl - hr) / (std::abs(hl) + scale));

    const auto ab = gamma_field(xi, gamma_field(xi2, f, m), m), ba = gamma_field(xi2, gamma_field(xi, f, m), m);
    comm = std::max(comm, max_abs_difference(ab, ba) / (1.0 + max_abs_coefficient(ab)));
  }
  CHECK(adj <= 1e-10);
  CHECK(herm <= 1e-10);
  CHECK(comm <= 1e-10);
}

TEST_CASE("mixed commutator identities on rank-one vectors") {
  test::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int atoms = test::uniform_int(rng, 1, 4), n = test::uniform_int(rng, 1, 5);
    const auto x1 = test::random_vec(rng, atoms), x2 = test::random_vec(rng, atoms);
    const auto phi = test::random_vec(rng, atoms), phi1 = test::random_vec(rng, atoms);
    const auto v = Fock::single(rank_one(phi, n));
    // a+(x1) a0(x2) + a0(x1) a+(x2) symmetric in x1, x2
    const auto l = create(x1, neutral(x2, v)) + neutral(x1, create(x2, v));
    const auto r = create(x2, neutral(x1, v)) + neutral(x2, create(x1, v));
    CHECK(max_abs_difference(l, r) <= 1e-12);
    // a0(xi) phi1 ⊗̂ phi^{n-1} = (xi phi1) ⊗̂ phi^{n-1} + (n-1) phi1 ⊗̂ (xi phi) ⊗̂ phi^{n-2}
    const auto base = sym_product(vec1(phi1), rank_one(phi, n - 1));
    Tensor expect = sym_product(vec1(TestFunction(x1.cwiseProduct(phi1))), rank_one(phi, n - 1));
    if (n >= 2)
      expect += double(n - 1) *
                sym_product(vec1(phi1), sym_product(vec1(TestFunction(x1.cwiseProduct(phi))), rank_one(phi, n - 2)));
    CHECK(maxdiff(neutral_kernel(x1, base), expect) <= 1e-12);
  }
}

TEST_CASE("jacobi_coefficients: frozen examples") {
  const auto jc = jacobi_coefficients(1.0, 4);
  CHECK(jc.alphas[1] == 1.0);
  CHECK(jc.betas[0] == 1.0);
  CHECK(jc.norms[3] * jc.norms[3] == doctest::Approx(36.0).epsilon(1e-15));
  CHECK(jacobi_coefficients(2.5, 2).alphas[2] == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
  CHECK_THROWS_AS(jacobi_coefficients(0.0, 3), DomainError);
  CHECK_THROWS_AS(jacobi_coefficients(-1.0, 3), DomainError);
  for (double s : {0.5, 1.0, 2.5}) {
    const auto c = jacobi_coefficients(s, 8);
    for (int n = 1; n <= 8; ++n) {
      CHECK(c.norms[n] / c.norms[n - 1] == doctest::Approx(std::sqrt(n * (n - 1 + s))).epsilon(1e-14));
      CHECK(c.norms[n] * c.norms[n] == doctest::Approx(factorial(n) * rising_factorial(s, n)).epsilon(1e-13));
    }
  }
}

TEST_CASE("jacobi_action_check: frozen examples") {
  const auto two = AtomicMeasure::single_atom(2.0);
  const auto rep = jacobi_action_check(two, TestFunction::Ones(1), 6);
  CHECK(rep.max_action_deviation <= 1e-10);
  CHECK(rep.action_deviation[0] == 0.0);
  const auto unit = jacobi_action_check(AtomicMeasure::single_atom(1.0), TestFunction::Ones(1), 8);
  CHECK(unit.max_norm_rel_error <= 1e-10);

  // indicator of two atoms out of three
  Eigen::VectorXd w(3);
  w << 0.4, 1.1, 0.7;
  TestFunction d(3);
  d << 1, 0, 1;
  const auto multi = jacobi_action_check(AtomicMeasure(w), d, 5);
  CHECK(multi.sigma == doctest::Approx(1.1));
  CHECK(multi.max_action_deviation <= 1e-10);
  CHECK(multi.max_norm_rel_error <= 1e-10);
  TestFunction bad(3);
  bad << 1, 0.5, 0;
  CHECK_THROWS_AS(jacobi_action_check(AtomicMeasure(w), bad, 3), ContractViolation);
}
