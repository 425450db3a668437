#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ffp;
using namespace ffp::testing;

TEST_CASE("Hermite and finite Gaussian") {
  CHECK(hermite<Rational>(3) == rpoly({1, 0, -3, 0}));
  CHECK(hermite<Rational>(4) == rpoly({1, 0, -6, 0, 3}));
  CHECK(finite_gaussian<Rational>(2, 0, 1) == rpoly({1, 0, -1}));
  CHECK(finite_gaussian<Rational>(3, 0, 1) == rpoly({"1", "0", "-3/2", "0"}));
  CHECK(finite_gaussian<Rational>(1, 2, 1) == rpoly({1, -2}));

  Rng rng(109);
  for (int m = 1; m <= 12; ++m) {
    const Rational mu = random_rational(rng, 2), sigma2 = Rational(1 + m % 3, 2);
    const auto g = finite_gaussian<Rational>(m, mu, sigma2);
    CHECK(g == finite_gaussian_heat<Rational>(m, mu, sigma2));
    CHECK(g == finite_gaussian<Rational>(m, 0, sigma2).shift_argument(-mu));
    if (m >= 2) {
      // mean-square root equals sigma2
      const auto ps = power_sums_from_coeffs(finite_gaussian<Rational>(m, 0, sigma2), 2);
      CHECK(ps[1] / m == sigma2);
    }
  }
  CHECK(rel_coeff_diff(finite_gaussian<double>(5, 0.5, 2.0), to_double(finite_gaussian<Rational>(5, Rational(1, 2), 2))) <
        1e-14);
}

TEST_CASE("Laguerre and finite Poisson") {
  // L_2^{(0)}(x) = 1 - 2x + x^2/2
  CHECK(laguerre_poly<Rational>(2, 0) == rpoly({"1/2", "-2", "1"}));
  CHECK(laguerre<Rational>(2, 0, 2) == -1);
  CHECK(finite_poisson<Rational>(2, 1) == rpoly({"1", "-2", "1/2"}));

  const auto half = finite_poisson<Rational>(2, Rational(1, 2));
  CHECK(half.coeff(0) == 0);
  CHECK(half.coeff(1) != 0);
  CHECK_THROWS_AS(finite_poisson<Rational>(3, Rational(1, 2)), NonIntegerLambdaM);
  CHECK_THROWS_AS(finite_poisson<Rational>(3, Rational(0)), NonIntegerLambdaM);

  for (int m = 1; m <= 8; ++m)
    for (int lm = 1; lm <= m; ++lm) {
      const Rational lambda(lm, m);
      CHECK(finite_poisson<Rational>(m, lambda) == finite_poisson_atomic<Rational>(m, lambda));
    }
  for (double r : real_roots_exact(finite_poisson<Rational>(6, 5))) CHECK(r > 0);
}

TEST_CASE("compound Poisson") {
  for (int m = 1; m <= 5; ++m) {
    const Rational lambda(1, m);
    const auto ones = Multiset<Rational>::repeated(Rational(1), m);
    CHECK(finite_compound_poisson(m, lambda, ones) == finite_poisson<Rational>(m, lambda * m));
    CHECK(compound_poisson_operator(m, lambda, poly_from_roots(ones)) == finite_poisson<Rational>(m, lambda * m));
    CHECK(finite_compound_poisson(m, Rational(1), Multiset<Rational>::repeated(Rational(0), m)) ==
          Poly<Rational>::monomial(m));
  }
  const Multiset<Rational> jumps{1, 2};
  CHECK(finite_compound_poisson(2, Rational(1), jumps) == compound_poisson_operator(2, Rational(1), poly_from_roots(jumps)));

  Rng rng(113);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 2 + trial % 4;
    const auto h = random_rational_multiset(rng, m);
    const Rational lambda(1 + trial % 3, m);
    CHECK(finite_compound_poisson(m, lambda, h) == compound_poisson_operator(m, lambda, poly_from_roots(h)));
  }
}

TEST_CASE("law of large numbers") {
  const auto fixed = poly_from_roots(Multiset<Rational>::repeated(Rational(3, 2), 3));
  for (long n : {1, 2, 7}) CHECK(lln_polynomial<Rational>({fixed}, n) == fixed);

  double prev = 1e9;
  for (long n : {4, 16, 64, 256}) {
    const auto rep = lln_run<Rational>({rpoly({1, 0, -1})}, n);
    CHECK(rep.distance < prev);
    CHECK(rep.distance <= 1.0 / std::sqrt(static_cast<double>(n)) + 1e-12);
    prev = rep.distance;
  }
  const auto mixed = lln_run<Rational>({rpoly({1, -2, 0}), rpoly({1, -2, 1}), rpoly({1, -2, -3})}, 60);
  CHECK(mixed.distance < 0.3);
}

TEST_CASE("central limit theorem") {
  for (long n : {1, 4, 16}) CHECK(clt_polynomial_exact(rpoly({1, 0, -1}), n) == rpoly({1, 0, -1}));
  const auto r1 = clt_run(Poly<double>::from_leading({1, 0, -1}), 9);
  CHECK(r1.distance < 1e-12);

  double prev = 1e9;
  for (long n : {1, 4, 16, 64, 256}) {
    const auto rep = clt_run(Poly<double>::from_leading({1, 0, -1, 0}), n);
    CHECK(rep.distance <= prev + 1e-9);
    prev = rep.distance;
  }
  CHECK(prev <= 1e-2);
  CHECK(max_coeff_diff(to_double(clt_polynomial_exact(rpoly({1, 0, -1, 0}), 16)),
                       clt_run(Poly<double>::from_leading({1, 0, -1, 0}), 16).result) < 1e-12);
  CHECK_THROWS_AS(clt_run(Poly<double>::from_leading({1, -1, 0}), 4), HypothesisViolated);
  CHECK_THROWS_AS(clt_polynomial_exact(rpoly({1, 0, -1}), 3), IndexOutOfRange);
}

TEST_CASE("Poisson limit") {
  CHECK(poisson_limit_exact(2, 1));
  CHECK(poisson_limit_exact(4, 1));
  CHECK(poisson_limit_exact(3, 2));
  CHECK(poisson_limit_exact(5, Rational(3, 5)));
}

TEST_CASE("Marchenko-Pastur support") {
  double prev = 1e9;
  for (int m : {4, 8, 16, 32}) {
    const auto rep = mp_support_check(m, 1);
    CHECK(rep.zero_multiplicity == 0);
    CHECK(rep.min_root >= -1e-12);
    const double eps = std::max(rep.max_root - 4, 0.0);
    CHECK(eps <= prev);
    prev = eps;
  }
  const auto four = mp_support_check(8, 4);
  CHECK(four.min_root >= 1 - 0.5);
  CHECK(four.max_root <= 9 + 0.5);
  for (int m : {2, 4, 8, 16}) CHECK(mp_support_check(m, Rational(1, 2)).zero_multiplicity == m / 2);
}

TEST_CASE("exact real roots") {
  const auto r = real_roots_exact(rpoly({1, -6, 11, -6, 0, 0}));
  REQUIRE(r.size() == 5);
  CHECK(r[0] == doctest::Approx(3));
  CHECK(r[2] == doctest::Approx(1));
  CHECK(r[3] == 0);
  CHECK(r[4] == 0);
  CHECK_THROWS_AS(real_roots_exact(rpoly({1, 0, 1})), NonConvergence);
}

TEST_CASE("restricted invertibility") {
  Rng rng(127);
  // Parseval frame: first m rows of an n x n orthogonal matrix
  const Matrix<double> q = haar_orthogonal(6, rng);
  const Matrix<double> frame = q.topRows(3);
  const auto rep = restricted_invertibility_demo(frame, 2);
  CHECK(rep.deviation <= 1e-10);
  CHECK(rep.kth_root >= rep.bound);

  const auto one = restricted_invertibility_demo(frame, 1);
  CHECK(max_coeff_diff(one.expected, Poly<double>::from_leading({1, -0.5, 0, 0})) < 1e-12);

  const auto basis = restricted_invertibility_demo(Matrix<double>::Identity(3, 3), 1);
  CHECK(max_coeff_diff(basis.expected, Poly<double>::from_leading({1, -1, 0, 0})) < 1e-12);

  CHECK_THROWS_AS(restricted_invertibility_demo(2 * frame, 1), HypothesisViolated);
  CHECK_THROWS_AS(restricted_invertibility_demo(haar_orthogonal(40, rng).topRows(3), 5), BudgetExceeded);
}
