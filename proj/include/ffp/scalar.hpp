#pragma once

// Scalar types shared by every module.
//
// Two coefficient fields are supported: exact rationals (GMP backed, used for
// identity checks) and double (used for root work and Monte Carlo). Complex
// doubles appear only as roots and U transforms. Conversion between modes is
// always explicit through to_double / to_rational.

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

namespace ffp {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

template <typename Scalar>
inline constexpr bool is_complex_v = std::is_same_v<Scalar, Complex>;

/// Build num/den in the requested field.
template <typename Scalar>
Scalar ratio(std::int64_t num, std::int64_t den = 1) {
  if constexpr (is_exact_v<Scalar>) {
    return Rational(num, den);
  } else {
    return Scalar(static_cast<double>(num) / static_cast<double>(den));
  }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

inline Rational to_rational(double d) { return Rational(d); }
inline const Rational& to_rational(const Rational& r) { return r; }

/// An exact value in the requested field.
template <typename Scalar>
Scalar to_scalar(const Rational& r) {
  if constexpr (is_exact_v<Scalar>) return r;
  else return Scalar(to_double(r));
}

template <typename Scalar>
bool is_zero(const Scalar& s) {
  return s == Scalar(0);
}

/// Magnitude as a double, for tolerance comparisons in any mode.
template <typename Scalar>
double magnitude(const Scalar& s) {
  if constexpr (is_exact_v<Scalar>) {
    return std::abs(to_double(s));
  } else {
    return std::abs(s);
  }
}

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer b = 1;
  for (long i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

/// Generalized binomial C(top, k) for integer top of either sign.
inline Integer binomial_general(long top, long k) {
  if (k < 0) return 0;
  if (top >= 0) return binomial(top, k);
  // C(-a, k) = (-1)^k C(a + k - 1, k)
  Integer b = binomial(-top + k - 1, k);
  return (k % 2 == 0) ? b : Integer(-b);
}

template <typename Scalar>
Scalar as_scalar(const Integer& z) {
  if constexpr (is_exact_v<Scalar>) {
    return Rational(z);
  } else {
    return Scalar(z.convert_to<double>());
  }
}

template <typename Scalar>
Scalar factorial_as(unsigned n) {
  return as_scalar<Scalar>(factorial(n));
}

template <typename Scalar>
Scalar binomial_as(long n, long k) {
  return as_scalar<Scalar>(binomial(n, k));
}

/// Integer power with exact semantics for rationals and negative exponents.
template <typename Scalar>
Scalar ipow(Scalar base, long e) {
  if (e < 0) return Scalar(1) / ipow(base, -e);
  Scalar r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

/// Parse "p/q", an integer, or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace ffp
