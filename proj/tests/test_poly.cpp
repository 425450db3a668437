#include "support.hpp"

#include <doctest.h>

using namespace ffp;
using namespace ffp::testing;

TEST_CASE("poly_from_roots") {
  CHECK(poly_from_roots(Multiset<Rational>{1, 2, 3}) == rpoly({1, -6, 11, -6}));
  CHECK(poly_from_roots(Multiset<Rational>{}) == Poly<Rational>::constant(1));
  CHECK(poly_from_roots(Multiset<Rational>::repeated(Rational(2), 3)) == rpoly({1, -6, 12, -8}));

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_rational_multiset(rng, 1 + trial % 7);
    const auto p = poly_from_roots(s);
    CHECK(p.is_monic());
    for (const auto& r : s.elements()) CHECK(p(r) == 0);
  }
}

TEST_CASE("roots") {
  const auto r1 = real_roots(rpoly({1, 0, -1}));
  CHECK(r1[0] == doctest::Approx(1));
  CHECK(r1[1] == doctest::Approx(-1));
  const auto r2 = real_roots(rpoly({1, -6, 11, -6}));
  CHECK(r2[0] == doctest::Approx(3));
  CHECK(r2[1] == doctest::Approx(2));
  CHECK(r2[2] == doctest::Approx(1));

  const auto c = roots(Poly<double>::from_leading({1, 0, 1}));
  REQUIRE(c.size() == 2);
  CHECK(std::abs(c[0].real()) < 1e-12);
  CHECK(std::abs(std::abs(c[0].imag()) - 1) < 1e-12);
  CHECK(c[0] == std::conj(c[1]));

  CHECK_THROWS_AS(roots(Poly<double>::constant(2.0)), IndexOutOfRange);
}

TEST_CASE("roots handles multiplicity") {
  const auto r = real_roots(to_double(poly_from_roots(Multiset<Rational>{1, 1, 1, 2, -1, -1})));
  const std::vector<double> want{2, 1, 1, 1, -1, -1};
  CHECK(sorted_linf(r, want) < 1e-6);
}

TEST_CASE("roots round trip") {
  Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 12;
    const auto s = random_real_multiset(rng, m, -3, 3);
    const auto r = real_roots(poly_from_roots(s));
    CHECK(sorted_linf(r, s.elements()) < 1e-6);
  }
}

TEST_CASE("signed_coeff") {
  const auto p = rpoly({1, -6, 11, -6});
  CHECK(signed_coeff(p, 1) == 6);
  CHECK(signed_coeff(p, 0) == 1);
  CHECK(signed_coeff(rpoly({1, -2, 1}), 2) == 1);
  CHECK_THROWS_AS(signed_coeff(p, 4), IndexOutOfRange);
  CHECK_THROWS_AS(signed_coeff(p, -1), IndexOutOfRange);
}

TEST_CASE("power sums") {
  CHECK(power_sums_from_coeffs(rpoly({1, 0, -1}), 2) == std::vector<Rational>{0, 2});
  CHECK(power_sums_from_coeffs(rpoly({1, -6, 11, -6}), 2) == std::vector<Rational>{6, 14});
  const auto ps = power_sums_from_coeffs(poly_from_roots(Multiset<Rational>::repeated(Rational(3), 4)), 5);
  for (int k = 1; k <= 5; ++k) CHECK(ps[k - 1] == 4 * ipow(Rational(3), k));

  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 12;
    const auto s = random_rational_multiset(rng, m);
    const auto p = poly_from_roots(s);
    const auto got = power_sums_from_coeffs(p, m + 3);
    for (int k = 1; k <= m + 3; ++k) CHECK(got[k - 1] == s.moment(k) * m);
    CHECK(coeffs_from_power_sums(got, m) == p);

    const auto sd = random_real_multiset(rng, m, -2, 2);
    const auto psd = power_sums_from_coeffs(poly_from_roots(sd), m);
    const auto rts = roots(poly_from_roots(sd));
    for (int k = 1; k <= m; ++k) {
      Complex direct = 0;
      for (const auto& r : rts.elements()) direct += std::pow(r, k);
      CHECK(std::abs(direct - psd[k - 1]) <= 1e-6 * std::max(1.0, std::abs(psd[k - 1])));
    }
  }
}

TEST_CASE("char_poly") {
  CHECK(char_poly(example_a()) == rpoly({1, -6, 11, -6}));
  CHECK(char_poly(example_b()) == rpoly({1, -6, 11, -6}));
  CHECK(char_poly(Matrix<Rational>(Matrix<Rational>::Zero(4, 4))) == Poly<Rational>::monomial(4));
  CHECK(max_coeff_diff(char_poly(to_double(example_b())), Poly<double>::from_leading({1, -6, 11, -6})) < 1e-12);

  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 5;
    const Matrix<double> a = random_symmetric(rng, m);
    const Matrix<double> q = haar_orthogonal(m, rng);
    Matrix<double> rotated = q.transpose() * a * q;
    rotated = 0.5 * (rotated + rotated.transpose());
    CHECK(rel_coeff_diff(char_poly(rotated), char_poly(a)) < 1e-10);
  }
}

TEST_CASE("determinant exact") {
  Matrix<Rational> a(3, 3);
  a << 0, 1, 2, 3, 4, 5, 6, 7, 9;
  CHECK(determinant(a) == -3);
  Matrix<Rational> s(2, 2);
  s << 1, 2, 2, 4;
  CHECK(determinant(s) == 0);
}

TEST_CASE("poly arithmetic") {
  const auto p = rpoly({1, -3, 2});
  CHECK(p.derivative() == rpoly({2, -3}));
  CHECK(p.derivative(3).is_zero());
  CHECK(p.shift_argument(Rational(1)) == rpoly({1, -1, 0}));
  CHECK(p.scale_argument(Rational(2)) == rpoly({4, -6, 2}));
  CHECK((p * rpoly({1, 1})) == rpoly({1, -2, -1, 2}));
  CHECK(rpoly({2, 4}).monic() == rpoly({1, 2}));
  CHECK(Poly<Rational>::constant(0).degree() == 0);
}
