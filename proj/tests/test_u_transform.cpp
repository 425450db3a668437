#include "support.hpp"

#include <doctest.h>

using namespace ffp;
using namespace ffp::testing;

TEST_CASE("two-point example") {
  CHECK(u_moments(Multiset<Rational>{-1, 1}, 2) == std::vector<Rational>{0, -1});
  const auto t = u_transform(Multiset<Rational>{-1, 1});
  REQUIRE(t.size() == 2);
  CHECK(multiset_distance(t, Multiset<Complex>{Complex(0, 1), Complex(0, -1)}) < 1e-12);
  const auto s = u_inverse(Multiset<Complex>{Complex(0, 1), Complex(0, -1)});
  CHECK(multiset_distance(s, Multiset<Complex>{-1.0, 1.0}) < 1e-12);
}

TEST_CASE("four-point example") {
  const Multiset<Rational> s{1, 1, -1, -1};
  CHECK(u_moments(s, 4) == std::vector<Rational>{0, Rational(-1, 3), 0, 1});
  const auto t = u_transform(s);
  CHECK(multiset_distance(u_inverse(t), Multiset<Complex>{1.0, 1.0, -1.0, -1.0}) < 1e-6);
}

TEST_CASE("constant multisets are fixed") {
  const Multiset<Rational> s = Multiset<Rational>::repeated(Rational(7, 3), 4);
  const auto mom = u_moments(s, 6);
  for (int k = 1; k <= 6; ++k) CHECK(mom[k - 1] == ipow(Rational(7, 3), k));
  CHECK(multiset_distance(u_inverse(Multiset<Complex>::repeated(0.0, 3)), Multiset<Complex>::repeated(0.0, 3)) < 1e-12);
}

TEST_CASE("defining identity and realness") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 1 + trial % 8;
    const auto s = random_rational_multiset(rng, m);
    const auto p = poly_from_roots(s);
    std::vector<Rational> mom = u_moments(s, 2 * m);
    mom.insert(mom.begin(), Rational(1));
    CHECK(expected_binomial_power(mom, m) == p);
    // moments of T are those of its own char poly
    const auto t_poly = u_transform_poly(p);
    const auto ps = power_sums_from_coeffs(t_poly, 2 * m);
    for (int k = 1; k <= 2 * m; ++k) CHECK(ps[k - 1] == mom[k] * m);
  }
}

TEST_CASE("scale and translate") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 6;
    const auto s = random_rational_multiset(rng, m);
    const Rational c = random_rational(rng, 2), k = random_rational(rng, 2) + Rational(5, 2);
    const auto t = u_transform_poly(poly_from_roots(s));
    CHECK(u_transform_poly(poly_from_roots(s.shifted(c))) == t.shift_argument(-c));
    // roots of t scaled by k: k^m t(x/k)
    CHECK(u_transform_poly(poly_from_roots(s.scaled(k))) == t.scale_argument(1 / k) * ipow(k, m));
  }
}

TEST_CASE("round trip through roots") {
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 1 + trial % 8;
    const auto s = random_real_multiset(rng, m, -2, 2);
    const auto back = u_inverse(u_transform(s));
    std::vector<Complex> want(s.elements().begin(), s.elements().end());
    CHECK(multiset_distance(back, Multiset<Complex>(want)) < 1e-5);
  }
}
