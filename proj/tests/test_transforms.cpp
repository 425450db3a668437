#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace ffp;
using namespace ffp::testing;

namespace {

using S = TruncatedSeries<Rational>;

}  // namespace

TEST_CASE("finite R-transform") {
  for (int m = 1; m <= 6; ++m) {
    const Rational c(-5, 3);
    CHECK(finite_r_transform(poly_from_roots(Multiset<Rational>::repeated(c, m))) == S::constant(c, m));
  }
  CHECK(finite_r_transform(rpoly({1, 0, -1})) == S::from({0, 2}, 2));
  CHECK(finite_r_transform(rpoly({1, 0, -2})) == S::from({0, 4}, 2));

  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 7;
    const auto s = random_rational_multiset(rng, m);
    const auto p = poly_from_roots(s);
    const Rational c = random_rational(rng, 2);
    const auto r = finite_r_transform(p);
    CHECK(r[0] == s.mean());
    CHECK(finite_r_transform(poly_from_roots(s.shifted(c))) == r + S::constant(c, m));
  }
}

TEST_CASE("finite K-transform") {
  const auto k0 = finite_k_transform(Poly<Rational>::monomial(3));
  CHECK(k0.pole == Rational(4, 3));
  CHECK(k0.tail == S(3));
  const auto kc = finite_k_transform(poly_from_roots(Multiset<Rational>::repeated(Rational(2), 2)));
  CHECK(kc.pole == Rational(3, 2));
  CHECK(kc.tail == S::constant(2, 2));
  const auto k2 = finite_k_transform(rpoly({1, 0, -1}));
  CHECK(k2.pole == Rational(3, 2));
  CHECK(k2.tail == S::from({0, 2}, 2));
}

TEST_CASE("R additivity") {
  const auto p = rpoly({1, 0, -1});
  CHECK(r_additivity_check(p, p).ok);
  CHECK(finite_r_transform(p) + finite_r_transform(p) == finite_r_transform(rpoly({1, 0, -2})));
  CHECK(r_additivity_check(p, Poly<Rational>::monomial(2)).ok);
  CHECK(finite_r_transform(Poly<Rational>::monomial(4)) == S(4));

  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 6;
    const auto a = poly_from_roots(random_rational_multiset(rng, m));
    const auto b = poly_from_roots(random_rational_multiset(rng, m));
    CHECK(r_additivity_check(a, b).ok);
    const auto fa = poly_from_roots(random_real_multiset(rng, 5, -2, 2));
    const auto fb = poly_from_roots(random_real_multiset(rng, 5, -2, 2));
    const auto res = r_additivity_check(fa, fb);
    CHECK(res.ok);
    CHECK(res.residual <= 1e-8);
  }
  CHECK_THROWS_AS(r_additivity_check(rpoly({1, 0}), rpoly({1, 0, 0})), DegreeMismatch);
}

TEST_CASE("S moments and multiplicativity") {
  const auto v = s_moment_values(rpoly({1, -3, 2}));
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(1));
  CHECK(v[1] == doctest::Approx(0.75));
  CHECK(v[2] == doctest::Approx(0.5));
  for (double x : s_moment_values(poly_from_roots(Multiset<Rational>::repeated(Rational(3), 4))))
    CHECK(x == doctest::Approx(1));
  const auto a = s_moment_values(rpoly({1, -6, 11, -6}));
  const auto mom = u_moments(Multiset<Rational>{1, 2, 3}, 3);
  for (int k = 1; k <= 3; ++k) CHECK(a[k] == doctest::Approx(to_double(mom[k - 1]) / std::pow(3.0, k)));
  CHECK_THROWS_AS(s_moment_values(rpoly({1, 0, -1})), NonPositiveRoots);

  const auto p = rpoly({1, -6, 11, -6});
  CHECK(s_multiplicativity_check(p, p).ok);
  CHECK(s_multiplicativity_check(p, poly_from_roots(Multiset<Rational>::repeated(Rational(1), 3))).ok);
  Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 6;
    CHECK(s_multiplicativity_check(poly_from_roots(random_positive_multiset(rng, m)),
                                   poly_from_roots(random_positive_multiset(rng, m)))
              .ok);
    const auto res = s_multiplicativity_check(poly_from_roots(random_real_multiset(rng, m, 0.1, 3)),
                                              poly_from_roots(random_real_multiset(rng, m, 0.1, 3)));
    CHECK(res.residual <= 1e-8);
  }
}

TEST_CASE("K quadrature") {
  for (int m = 1; m <= 5; ++m)
    for (double s : {0.25, 1.0, 3.0}) {
      const auto r = quadrature_k_check(Poly<double>::monomial(m), s);
      const double closed = std::tgamma(m + 1) / std::pow(m * s, m + 1);
      CHECK(r.closed_form == doctest::Approx(closed).epsilon(1e-12));
      CHECK(r.deviation <= 1e-6);
    }
  CHECK(quadrature_k_check(Poly<double>::from_leading({1, -2, 1}), 1.0).deviation <= 1e-6);
  CHECK(quadrature_k_check(Poly<double>::from_leading({1, 0, -1}), 0.5).deviation <= 1e-6);
  CHECK_THROWS_AS(quadrature_k_check(Poly<double>::from_leading({1, 0, -1}), 0.0), QuadratureFailure);
}

TEST_CASE("N quadrature") {
  for (int m = 1; m <= 5; ++m) {
    const auto p = to_double(poly_from_roots(Multiset<Rational>::repeated(Rational(1), m)));
    const auto r = quadrature_n_check(p, 1.0);
    const double beta = std::tgamma(m + 1) * std::tgamma(m) / std::tgamma(2 * m + 1);
    CHECK(r.closed_form == doctest::Approx(beta).epsilon(1e-12));
    CHECK(r.deviation <= 1e-6);
  }
  const auto p = Poly<double>::from_leading({1, -3, 2});
  const auto base = quadrature_n_check(p, 0.7);
  CHECK(base.deviation <= 1e-6);
  // roots scaled by c multiply the integral by c^{-ms}
  const double c = 1.7;
  const auto scaled = quadrature_n_check(p.scale_argument(1 / c) * (c * c), 0.7);
  CHECK(scaled.integral == doctest::Approx(base.integral * std::pow(c, -2 * 0.7)).epsilon(1e-9));
}

TEST_CASE("digamma") {
  CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-13));
  CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-13));
  CHECK(digamma(30.0) == doctest::Approx(3.3844381326855249).epsilon(1e-13));
  CHECK(identity_s_reference(1, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(std::abs(identity_s_reference(10000, 1.0) - std::log(2.0)) < 1e-3);
  CHECK(identity_s_reference(4, 1e6) < 1e-5);
  CHECK_THROWS_AS(digamma(-2.0), IndexOutOfRange);
}

TEST_CASE("R convergence study") {
  const auto rows = r_convergence_study(Multiset<Rational>{-1, 1}, {1, 2, 4, 8, 16, 32, 64});
  REQUIRE(rows.size() == 7);
  CHECK(rows.front().reference[1] == doctest::Approx(1));
  CHECK(rows.front().reference[3] == doctest::Approx(-1));
  double prev = 1e9;
  for (const auto& row : rows) {
    const double gap = std::abs(row.finite[1] - 1);
    CHECK(gap <= prev);
    prev = gap;
  }
  CHECK(prev < 0.05);

  for (const auto& row : r_convergence_study(Multiset<Rational>{3}, {1, 2, 5}))
    CHECK(row.finite[0] == doctest::Approx(3));
  for (const auto& row : r_convergence_study(Multiset<Rational>{0, 1, 2}, {1, 3, 9}))
    CHECK(row.finite[0] == doctest::Approx(1));
  CHECK(to_csv(rows).rfind("replication,m,finite_0", 0) == 0);
}
