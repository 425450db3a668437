#include "support.hpp"

#include <doctest.h>

using namespace ffp;
using namespace ffp::testing;

TEST_CASE("worked example") {
  const auto p = rpoly({1, -6, 11, -6});
  CHECK(additive_convolve(p, p, 3) == rpoly({1, -12, 46, -56}));
  CHECK(multiplicative_convolve(p, p, 3) == rpoly({"1", "-12", "121/3", "-36"}));
  CHECK(additive_convolve(rpoly({1, -1, 0}), rpoly({1, -1, 0}), 2) == rpoly({"1", "-2", "1/2"}));
}

TEST_CASE("units") {
  Rng rng(2);
  for (int m = 1; m <= 6; ++m) {
    const auto p = poly_from_roots(random_rational_multiset(rng, m));
    CHECK(additive_convolve(p, Poly<Rational>::monomial(m), m) == p);
    CHECK(multiplicative_convolve(p, poly_from_roots(Multiset<Rational>::repeated(Rational(1), m)), m) == p);
    const Rational c = random_rational(rng, 2) + 4;
    // p [x] (x - c)^m = c^m p(x / c)
    CHECK(multiplicative_convolve(p, poly_from_roots(Multiset<Rational>::repeated(c, m)), m) ==
          p.scale_argument(1 / c) * ipow(c, m));
  }
  CHECK_THROWS_AS(additive_convolve(rpoly({1, 0, 0}), rpoly({1, 0}), 1), DegreeExceeded);
  CHECK_THROWS_AS(multiplicative_convolve(rpoly({1, 0, 0}), rpoly({1, 0}), 2), DegreeMismatch);
}

TEST_CASE("three routes agree") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 8;
    const auto p = poly_from_roots(random_rational_multiset(rng, m));
    const auto q = poly_from_roots(random_rational_multiset(rng, 1 + trial % m));
    const auto ref = additive_convolve(p, q, m);
    CHECK(additive_convolve_derivative_form(p, q, m) == ref);
    CHECK(additive_convolve_operator_form(p, q, m) == ref);
  }
}

TEST_CASE("operators") {
  CHECK(operator_of(Poly<Rational>::monomial(4), 4) == DiffOperator<Rational>::identity(4));
  Vector<Rational> a(3);
  a << 1, Rational(-1, 2), 0;
  CHECK(operator_of(rpoly({1, -1, 0}), 2) == DiffOperator<Rational>(a));
  Vector<Rational> heat(4);
  heat << 1, 0, Rational(-1, 2), 0;
  CHECK(apply(DiffOperator<Rational>(heat), Poly<Rational>::monomial(3)) == rpoly({1, 0, -3, 0}));

  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 7;
    const auto p = poly_from_roots(random_rational_multiset(rng, 1 + trial % m));
    CHECK(apply(operator_of(p, m), Poly<Rational>::monomial(m)) == p);
  }
}

TEST_CASE("additive inverse") {
  for (int m = 1; m <= 6; ++m) {
    const Rational c(3, 2);
    CHECK(additive_inverse(poly_from_roots(Multiset<Rational>::repeated(c, m)), m) ==
          poly_from_roots(Multiset<Rational>::repeated(-c, m)));
    CHECK(additive_inverse(Poly<Rational>::monomial(m), m) == Poly<Rational>::monomial(m));
  }
  CHECK(additive_inverse(rpoly({1, 0, -1}), 2) == rpoly({1, 0, 1}));
  CHECK_THROWS_AS(additive_inverse(rpoly({1, 0}), 2), NotInvertible);

  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 8;
    const auto p = poly_from_roots(random_rational_multiset(rng, m));
    CHECK(additive_convolve(p, additive_inverse(p, m), m) == Poly<Rational>::monomial(m));
  }
}

TEST_CASE("algebraic laws") {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 6;
    auto rp = [&] { return poly_from_roots(random_rational_multiset(rng, m)); };
    const auto p = rp(), q = rp(), r = rp();
    const Rational alpha = random_rational(rng, 3);
    CHECK(additive_convolve(p, q * alpha + r, m) ==
          additive_convolve(p, q, m) * alpha + additive_convolve(p, r, m));
    CHECK(additive_convolve(p, q, m) == additive_convolve(q, p, m));
    CHECK(additive_convolve(additive_convolve(p, q, m), r, m) == additive_convolve(p, additive_convolve(q, r, m), m));
    CHECK(multiplicative_convolve(p, q, m) == multiplicative_convolve(q, p, m));
    for (int k = 1; k <= m; ++k)
      CHECK(additive_convolve(p.derivative(k), q, m) == additive_convolve(p, q.derivative(k), m));
    CHECK(additive_power(p, 3, m) == additive_convolve(additive_convolve(p, p, m), p, m));
  }
}

TEST_CASE("pair expectation") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 6;
    const auto p = poly_from_roots(random_rational_multiset(rng, m));
    const auto q = poly_from_roots(random_rational_multiset(rng, m));
    CHECK(additive_convolve(p, q, m) == pair_expectation_add(p, q, m));
    CHECK(multiplicative_convolve(p, q, m) == pair_expectation_mult(p, q, m));
  }
}

TEST_CASE("real roots are preserved") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 2 + trial % 7;
    const auto p = poly_from_roots(random_real_multiset(rng, m, -2, 2));
    const auto q = poly_from_roots(random_real_multiset(rng, m, -2, 2));
    CHECK(max_imag(roots(additive_convolve(p, q, m))) <= 1e-7);
    const auto pp = poly_from_roots(random_real_multiset(rng, m, 0, 2));
    const auto qp = poly_from_roots(random_real_multiset(rng, m, 0, 2));
    const auto r = real_roots(multiplicative_convolve(pp, qp, m));
    CHECK(r.back() >= -1e-7);
  }
}
