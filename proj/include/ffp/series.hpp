#pragma once

// Truncated formal power series: a TruncatedSeries of order k is known
// modulo s^k, and no operation ever claims a coefficient at index >= k.

#include "ffp/errors.hpp"
#include "ffp/poly.hpp"
#include "ffp/scalar.hpp"

#include <algorithm>
#include <vector>

namespace ffp {

template <typename Scalar>
class TruncatedSeries {
 public:
  TruncatedSeries() : c_(Vector<Scalar>::Zero(1)) {}

  /// Zero series of order k.
  explicit TruncatedSeries(int order) : c_(Vector<Scalar>::Zero(order)) {
    if (order < 1) throw IndexOutOfRange("series order must be positive");
  }

  explicit TruncatedSeries(Vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.size() < 1) throw IndexOutOfRange("series order must be positive");
  }

  static TruncatedSeries from(const std::vector<Scalar>& cs, int order) {
    TruncatedSeries s(order);
    for (int i = 0; i < order && i < static_cast<int>(cs.size()); ++i) s.c_(i) = cs[i];
    return s;
  }

  /// The series s (identity map), order k.
  static TruncatedSeries variable(int order) {
    TruncatedSeries s(order);
    if (order > 1) s.c_(1) = Scalar(1);
    return s;
  }

  static TruncatedSeries constant(const Scalar& a, int order) {
    TruncatedSeries s(order);
    s.c_(0) = a;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()); }
  const Scalar& operator[](int i) const { return c_(i); }
  Scalar& operator[](int i) { return c_(i); }
  const Vector<Scalar>& coeffs() const { return c_; }

  /// Same series known to fewer terms.
  TruncatedSeries truncated(int order) const {
    if (order > this->order()) throw IndexOutOfRange("cannot raise the order of a series");
    return TruncatedSeries(Vector<Scalar>(c_.head(order)));
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int k = std::min(a.order(), b.order());
    return TruncatedSeries(Vector<Scalar>(a.c_.head(k) + b.c_.head(k)));
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int k = std::min(a.order(), b.order());
    return TruncatedSeries(Vector<Scalar>(a.c_.head(k) - b.c_.head(k)));
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a) {
    return TruncatedSeries(Vector<Scalar>(-a.c_));
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const Scalar& s) {
    return TruncatedSeries(Vector<Scalar>(a.c_ * s));
  }
  friend TruncatedSeries operator*(const Scalar& s, const TruncatedSeries& a) { return a * s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int k = std::min(a.order(), b.order());
    TruncatedSeries out(k);
    for (int i = 0; i < k; ++i) {
      if (is_zero(a.c_(i))) continue;
      for (int j = 0; i + j < k; ++j) out.c_(i + j) += a.c_(i) * b.c_(j);
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order() == b.order() && a.c_ == b.c_;
  }

 private:
  Vector<Scalar> c_;
};

template <typename Scalar>
double max_coeff_diff(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  const int k = std::min(a.order(), b.order());
  double worst = 0;
  for (int i = 0; i < k; ++i) worst = std::max(worst, magnitude(Scalar(a[i] - b[i])));
  return worst;
}

/// d/ds; the result is known to one fewer term.
template <typename Scalar>
TruncatedSeries<Scalar> series_derive(const TruncatedSeries<Scalar>& a) {
  if (a.order() < 2) throw IndexOutOfRange("derivative of an order-1 series carries no information");
  TruncatedSeries<Scalar> d(a.order() - 1);
  for (int i = 1; i < a.order(); ++i) d[i - 1] = a[i] * Scalar(static_cast<long>(i));
  return d;
}

/// Antiderivative with zero constant; known to one more term.
template <typename Scalar>
TruncatedSeries<Scalar> series_integrate(const TruncatedSeries<Scalar>& a) {
  TruncatedSeries<Scalar> out(a.order() + 1);
  for (int i = 0; i < a.order(); ++i) out[i + 1] = a[i] / Scalar(static_cast<long>(i + 1));
  return out;
}

/// Multiplicative inverse; requires a nonzero constant term.
template <typename Scalar>
TruncatedSeries<Scalar> series_reciprocal(const TruncatedSeries<Scalar>& a) {
  if (is_zero(a[0])) throw NotInvertible("reciprocal needs a nonzero constant term");
  const int k = a.order();
  TruncatedSeries<Scalar> b(k);
  b[0] = Scalar(1) / a[0];
  for (int n = 1; n < k; ++n) {
    Scalar acc(0);
    for (int i = 1; i <= n; ++i) acc += a[i] * b[n - i];
    b[n] = -acc * b[0];
  }
  return b;
}

template <typename Scalar>
TruncatedSeries<Scalar> series_add(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  return a + b;
}

template <typename Scalar>
TruncatedSeries<Scalar> series_mul(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  return a * b;
}

/// ln a, for a with constant term 1. Known to the same order as a.
template <typename Scalar>
TruncatedSeries<Scalar> series_ln(const TruncatedSeries<Scalar>& a) {
  if (a[0] != Scalar(1)) throw InvalidConstantTerm("ln requires constant term 1");
  if (a.order() == 1) return TruncatedSeries<Scalar>(1);
  // ln a = integral of a'/a
  const TruncatedSeries<Scalar> q = series_derive(a) * series_reciprocal(a.truncated(a.order() - 1));
  return series_integrate(q);
}

/// exp a, for a with constant term 0.
template <typename Scalar>
TruncatedSeries<Scalar> series_exp(const TruncatedSeries<Scalar>& a) {
  if (!is_zero(a[0])) throw InvalidConstantTerm("exp requires constant term 0");
  const int k = a.order();
  TruncatedSeries<Scalar> b(k);
  b[0] = Scalar(1);
  // b' = a' b  =>  n b_n = sum_{j=1..n} j a_j b_{n-j}
  for (int n = 1; n < k; ++n) {
    Scalar acc(0);
    for (int j = 1; j <= n; ++j) acc += Scalar(static_cast<long>(j)) * a[j] * b[n - j];
    b[n] = acc / Scalar(static_cast<long>(n));
  }
  return b;
}

/// a^n for integer n >= 0.
template <typename Scalar>
TruncatedSeries<Scalar> series_pow(TruncatedSeries<Scalar> a, long n) {
  TruncatedSeries<Scalar> r = TruncatedSeries<Scalar>::constant(Scalar(1), a.order());
  while (n > 0) {
    if (n & 1) r = r * a;
    a = a * a;
    n >>= 1;
  }
  return r;
}

/// a(b(s)); requires b(0) = 0.
template <typename Scalar>
TruncatedSeries<Scalar> series_compose(const TruncatedSeries<Scalar>& a, const TruncatedSeries<Scalar>& b) {
  if (!is_zero(b[0])) throw InvalidConstantTerm("composition needs an inner series without constant term");
  const int k = std::min(a.order(), b.order());
  const TruncatedSeries<Scalar> inner = b.truncated(k);
  // Horner
  TruncatedSeries<Scalar> acc = TruncatedSeries<Scalar>::constant(a[k - 1], k);
  for (int i = k - 2; i >= 0; --i) acc = acc * inner + TruncatedSeries<Scalar>::constant(a[i], k);
  return acc;
}

/// Compositional inverse g with a(g(s)) = s, by Newton iteration with
/// doubling precision. Requires a(0) = 0 and a'(0) != 0.
template <typename Scalar>
TruncatedSeries<Scalar> series_revert(const TruncatedSeries<Scalar>& a) {
  const int k = a.order();
  if (!is_zero(a[0])) throw NotInvertible("reversion needs a(0) = 0");
  if (k < 2) return TruncatedSeries<Scalar>(k);
  if (is_zero(a[1])) throw NotInvertible("reversion needs a'(0) != 0");

  TruncatedSeries<Scalar> g(2);
  g[1] = Scalar(1) / a[1];
  int prec = 2;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    TruncatedSeries<Scalar> gp(prec);
    for (int i = 0; i < g.order(); ++i) gp[i] = g[i];
    const TruncatedSeries<Scalar> ap = a.truncated(prec);
    // a' extended by one zero term so that it composes at full precision
    TruncatedSeries<Scalar> da(prec);
    for (int i = 1; i < prec; ++i) da[i - 1] = ap[i] * Scalar(static_cast<long>(i));
    if (prec < k) da[prec - 1] = a[prec] * Scalar(static_cast<long>(prec));
    const TruncatedSeries<Scalar> residual = series_compose(ap, gp) - TruncatedSeries<Scalar>::variable(prec);
    const TruncatedSeries<Scalar> slope = series_compose(da, gp);
    g = gp - residual * series_reciprocal(slope);
  }
  return g;
}

/// Coefficient of 1/s plus a regular tail; carries the m-finite K-transform.
template <typename Scalar>
struct LaurentK {
  Scalar pole;
  TruncatedSeries<Scalar> tail;
};

// ---------------------------------------------------------------------------
// Voiculescu reference transforms, built from the moments of a finite measure.

/// R-transform R(s) = K(s) - 1/s of the uniform measure on mu, mod s^order.
template <typename Scalar>
TruncatedSeries<Scalar> voiculescu_r_series(const Multiset<Scalar>& mu, int order) {
  // G(z) = sum M_i z^{-i-1}; with w = 1/z, g(w) = sum M_i w^{i+1}.
  const int k = order + 2;
  TruncatedSeries<Scalar> g(k);
  for (int i = 0; i + 1 < k; ++i) g[i + 1] = mu.moment(i);
  const TruncatedSeries<Scalar> h = series_revert(g);  // h = 1/K
  // h(s) = s u(s); R = (1/u - 1)/s
  TruncatedSeries<Scalar> u(k - 1);
  for (int i = 0; i + 1 < k; ++i) u[i] = h[i + 1];
  const TruncatedSeries<Scalar> inv = series_reciprocal(u);
  TruncatedSeries<Scalar> r(order);
  for (int i = 0; i < order; ++i) r[i] = inv[i + 1];
  return r;
}

/// Modified S-transform (s/(1+s)) M^{-1}(s) of a positive measure, mod s^order.
template <typename Scalar>
TruncatedSeries<Scalar> voiculescu_s_values(const Multiset<Scalar>& mu, int order) {
  // psi(w) = sum_{i>=1} M_i w^i, chi = psi^{-1}, S~(s) = s / ((1+s) chi(s)).
  const int k = order + 1;
  TruncatedSeries<Scalar> psi(k);
  for (int i = 1; i < k; ++i) psi[i] = mu.moment(i);
  if (is_zero(psi[1])) throw NotInvertible("S-transform needs a nonzero first moment");
  const TruncatedSeries<Scalar> chi = series_revert(psi);
  TruncatedSeries<Scalar> chi_over_s(order);
  for (int i = 0; i < order; ++i) chi_over_s[i] = chi[i + 1];
  TruncatedSeries<Scalar> one_plus_s = TruncatedSeries<Scalar>::constant(Scalar(1), order);
  if (order > 1) one_plus_s[1] = Scalar(1);
  return series_reciprocal(one_plus_s * chi_over_s);
}

}  // namespace ffp
