#pragma once

// Seeded generators shared by the unit tests and the acceptance runner.

#include "ffp/ffp.hpp"

#include <random>

namespace ffp::testing {

using Rng = std::mt19937_64;

/// Rational in [-range, range] with denominator dividing den.
inline Rational random_rational(Rng& rng, int range, int den = 4) {
  std::uniform_int_distribution<int> d(-range * den, range * den);
  return Rational(d(rng), den);
}

inline Multiset<Rational> random_rational_multiset(Rng& rng, int m, int range = 3, int den = 4) {
  std::vector<Rational> xs;
  for (int i = 0; i < m; ++i) xs.push_back(random_rational(rng, range, den));
  return Multiset<Rational>(std::move(xs));
}

/// Positive rationals in (0, range].
inline Multiset<Rational> random_positive_multiset(Rng& rng, int m, int range = 3, int den = 4) {
  std::uniform_int_distribution<int> d(1, range * den);
  std::vector<Rational> xs;
  for (int i = 0; i < m; ++i) xs.push_back(Rational(d(rng), den));
  return Multiset<Rational>(std::move(xs));
}

inline Multiset<double> random_real_multiset(Rng& rng, int m, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> xs;
  for (int i = 0; i < m; ++i) xs.push_back(d(rng));
  return Multiset<double>(std::move(xs));
}

/// Real multiset with zero mean.
inline Multiset<double> random_centered_multiset(Rng& rng, int m, double lo = -1, double hi = 1) {
  const Multiset<double> s = random_real_multiset(rng, m, lo, hi);
  return s.shifted(-s.mean());
}

inline Matrix<Rational> random_integer_matrix(Rng& rng, int m, int range = 3, bool symmetric = false) {
  std::uniform_int_distribution<int> d(-range, range);
  Matrix<Rational> a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = Rational(d(rng));
  if (symmetric)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j) a(i, j) = a(j, i);
  return a;
}

inline Matrix<double> random_symmetric(Rng& rng, int m) {
  std::normal_distribution<double> d(0, 1);
  Matrix<double> a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = d(rng);
  return a;
}

inline Matrix<Rational> example_a() {
  Matrix<Rational> a = Matrix<Rational>::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 2;
  a(2, 2) = 3;
  return a;
}

inline Matrix<Rational> example_b() {
  Matrix<Rational> b(3, 3);
  b << 2, 0, 1, 0, 2, 0, 1, 0, 2;
  return b;
}

inline Poly<Rational> rpoly(std::initializer_list<long> leading_first) {
  std::vector<Rational> c;
  for (long x : leading_first) c.push_back(Rational(x));
  return Poly<Rational>::from_leading(c);
}

inline Poly<Rational> rpoly(std::initializer_list<const char*> leading_first) {
  std::vector<Rational> c;
  for (const char* x : leading_first) c.push_back(parse_rational(x));
  return Poly<Rational>::from_leading(c);
}

// E[(x - S - T)^m] over all m^2 pairs of U-transform elements, by moments.
inline Poly<Rational> pair_expectation_add(const Poly<Rational>& p, const Poly<Rational>& q, int m) {
  const auto a = u_moments_of_poly(p, m), b = u_moments_of_poly(q, m);
  std::vector<Rational> mom(m + 1);
  for (int k = 0; k <= m; ++k) {
    Rational acc = 0;
    for (int j = 0; j <= k; ++j) acc += binomial_as<Rational>(k, j) * a[j] * b[k - j];
    mom[k] = acc;
  }
  return expected_binomial_power(mom, m);
}

inline Poly<Rational> pair_expectation_mult(const Poly<Rational>& p, const Poly<Rational>& q, int m) {
  const auto a = u_moments_of_poly(p, m), b = u_moments_of_poly(q, m);
  std::vector<Rational> mom(m + 1);
  for (int k = 0; k <= m; ++k) mom[k] = a[k] * b[k];
  return expected_binomial_power(mom, m);
}

}  // namespace ffp::testing
