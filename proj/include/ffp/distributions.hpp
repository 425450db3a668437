#pragma once

// Finite free analogues of the constant, Gaussian, Poisson and compound
// Poisson laws, the limit theorems relating them, and the expected
// characteristic polynomial behind restricted invertibility.

#include "ffp/convolution.hpp"
#include "ffp/errors.hpp"
#include "ffp/poly.hpp"
#include "ffp/roots.hpp"

#include <vector>

namespace ffp {

/// Probabilists' Hermite polynomial: H_{n+1} = x H_n - n H_{n-1}.
template <typename Scalar>
Poly<Scalar> hermite(int n) {
  if (n < 0) throw IndexOutOfRange("hermite: negative degree");
  Poly<Scalar> prev = Poly<Scalar>::constant(Scalar(1));
  if (n == 0) return prev;
  Poly<Scalar> cur = Poly<Scalar>::monomial(1);
  for (int k = 1; k < n; ++k) {
    Poly<Scalar> next = Poly<Scalar>::monomial(1) * cur - prev * Scalar(static_cast<long>(k));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// c^{-m} H_m(c (x - mu)) with c^2 = (m-1)/sigma2. Only powers of c^2 occur,
/// so the result is exact in rational mode.
template <typename Scalar>
Poly<Scalar> finite_gaussian(int m, const Scalar& mu, const Scalar& sigma2) {
  if (m < 1) throw IndexOutOfRange("finite_gaussian: m must be positive");
  if (!(sigma2 > Scalar(0))) throw IndexOutOfRange("finite_gaussian: sigma2 must be positive");
  const Poly<Scalar> h = hermite<Scalar>(m);
  const Scalar c2 = Scalar(static_cast<long>(m - 1)) / sigma2;
  Vector<Scalar> out = Vector<Scalar>::Zero(m + 1);
  for (int k = m; k >= 0; k -= 2) out(k) = h.coeff(k) * ipow(c2, (k - m) / 2);
  return Poly<Scalar>(std::move(out)).shift_argument(Scalar(-mu));
}

/// exp(-sigma2 D^2 / (2(m-1))) applied to (x - mu)^m.
template <typename Scalar>
Poly<Scalar> finite_gaussian_heat(int m, const Scalar& mu, const Scalar& sigma2) {
  if (m < 1) throw IndexOutOfRange("finite_gaussian: m must be positive");
  const Poly<Scalar> base = Poly<Scalar>::monomial(m).shift_argument(Scalar(-mu));
  if (m == 1) return base;
  const Scalar a = -sigma2 / Scalar(static_cast<long>(2 * (m - 1)));
  Poly<Scalar> acc = base;
  Scalar coef(1);
  for (int j = 1; 2 * j <= m; ++j) {
    coef = coef * a / Scalar(static_cast<long>(j));
    acc = acc + base.derivative(2 * j) * coef;
  }
  return acc;
}

/// Associated Laguerre polynomial sum_i (-x)^i / i! C(n + alpha, n - i).
template <typename Scalar>
Poly<Scalar> laguerre_poly(int n, const Scalar& alpha) {
  if (n < 0) throw IndexOutOfRange("laguerre: negative degree");
  Vector<Scalar> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    // C(n + alpha, n - i) = prod_{l=1}^{n-i} (alpha + i + l) / l
    Scalar b(1);
    for (int l = 1; l <= n - i; ++l) b = b * (alpha + Scalar(static_cast<long>(i + l))) / Scalar(static_cast<long>(l));
    const Scalar term = b / factorial_as<Scalar>(i);
    c(i) = (i % 2 == 0) ? term : Scalar(-term);
  }
  return Poly<Scalar>(std::move(c));
}

template <typename Scalar>
Scalar laguerre(int n, const Scalar& alpha, const Scalar& x) {
  return laguerre_poly(n, alpha)(x);
}

/// lambda * m as an integer; throws unless it is a positive integer.
long lambda_times_m(int m, const Rational& lambda);

/// m! (-m)^{-m} L_m^{((lambda-1) m)}(m x).
template <typename Scalar>
Poly<Scalar> finite_poisson(int m, const Rational& lambda) {
  const long lm = lambda_times_m(m, lambda);
  const Scalar alpha = Scalar(lm - m);
  const Scalar mm(static_cast<long>(m));
  return laguerre_poly(m, alpha).scale_argument(mm) * (factorial_as<Scalar>(m) * ipow(Scalar(-mm), -m));
}

/// (lambda m)! (-m)^{-lambda m} x^{m(1-lambda)} L_{lambda m}^{(m(1-lambda))}(m x), for lambda <= 1.
template <typename Scalar>
Poly<Scalar> finite_poisson_atomic(int m, const Rational& lambda) {
  const long lm = lambda_times_m(m, lambda);
  if (lm > m) throw IndexOutOfRange("finite_poisson_atomic needs lambda <= 1");
  const Scalar mm(static_cast<long>(m));
  const Poly<Scalar> lag = laguerre_poly(static_cast<int>(lm), Scalar(m - lm)).scale_argument(mm);
  return Poly<Scalar>::monomial(static_cast<int>(m - lm)) * lag *
         (factorial_as<Scalar>(static_cast<unsigned>(lm)) * ipow(Scalar(-mm), -lm));
}

/// Compound Poisson with jump multiset {r_i}: the [+]_m product over i of the
/// per-root laws (1 - (r_i/m) D)^{lambda m}{x^m} = r_i^m P_m[lambda](x / r_i).
template <typename Scalar>
Poly<Scalar> finite_compound_poisson(int m, const Rational& lambda, const Multiset<Scalar>& jumps) {
  if (jumps.size() != m) throw DegreeMismatch("finite_compound_poisson: need m jump values");
  const Poly<Scalar> base = finite_poisson<Scalar>(m, lambda);
  std::vector<Poly<Scalar>> factors;
  for (const Scalar& r : jumps.elements()) {
    if (is_zero(r)) continue;  // x^m, the unit
    factors.push_back(base.scale_argument(Scalar(1) / r) * ipow(r, m));
  }
  return additive_convolve_all(factors, m);
}

/// Operator form: (sum_k (-1/m)^k e_k(h) D^k)^{lambda m} {x^m}, read straight
/// from the coefficients of h without extracting roots.
template <typename Scalar>
Poly<Scalar> compound_poisson_operator(int m, const Rational& lambda, const Poly<Scalar>& h) {
  const long lm = lambda_times_m(m, lambda);
  if (h.degree() != m) throw DegreeMismatch("compound_poisson_operator: h must have degree m");
  const Poly<Scalar> hm = h.monic();
  Vector<Scalar> a(m + 1);
  const Scalar minv = Scalar(-1) / Scalar(static_cast<long>(m));
  for (int k = 0; k <= m; ++k) a(k) = signed_coeff(hm, k) * ipow(minv, k);
  DiffOperator<Scalar> base(std::move(a)), acc = DiffOperator<Scalar>::identity(m);
  for (long n = lm; n > 0; n >>= 1) {
    if (n & 1) acc = acc * base;
    base = base * base;
  }
  return apply(acc, Poly<Scalar>::monomial(m));
}

struct LimitReport {
  Poly<double> result;
  double distance = 0;
};

/// [q_1 + ... + q_n] with q_i(x) = n^{-m} p_{i mod |ps|}(n x); distance is the
/// largest |root - mu| for the average root mean mu.
template <typename Scalar>
Poly<Scalar> lln_polynomial(const std::vector<Poly<Scalar>>& ps, long n) {
  if (ps.empty() || n < 1) throw IndexOutOfRange("lln_run: need inputs and n >= 1");
  const int m = ps.front().degree();
  const Scalar ns(n);
  std::vector<Poly<Scalar>> qs;
  for (const auto& p : ps) {
    if (p.degree() != m) throw DegreeMismatch("lln_run: all inputs must share a degree");
    qs.push_back(p.monic().scale_argument(ns) * ipow(ns, -m));
  }
  if (qs.size() == 1) return additive_power(qs.front(), n, m);
  Poly<Scalar> acc = Poly<Scalar>::monomial(m);
  for (long i = 0; i < n; ++i) acc = additive_convolve(acc, qs[i % qs.size()], m);
  return acc;
}

template <typename Scalar>
LimitReport lln_run(const std::vector<Poly<Scalar>>& ps, long n) {
  const Poly<Scalar> r = lln_polynomial(ps, n);
  const int m = r.degree();
  double mu = 0;
  for (const auto& p : ps) mu += -to_double(p.monic().coeff(m - 1)) / m;
  mu /= ps.size();
  double dist = 0;
  for (double root : real_roots(to_double(r))) dist = std::max(dist, std::abs(root - mu));
  return {to_double(r), dist};
}

/// n-fold [+]_m of n^{-m/2} p(sqrt(n) x) and its sorted-root distance to
/// N_m[0, sigma2], sigma2 the mean square root of p. Double precision.
LimitReport clt_run(const Poly<double>& p, long n);

/// Exact rational version for perfect-square n.
Poly<Rational> clt_polynomial_exact(const Poly<Rational>& p, long n);

/// Whether the (lambda m)-fold [+]_m of x^{m-1}(x - 1) equals P_m[lambda].
bool poisson_limit_exact(int m, const Rational& lambda);

struct SupportReport {
  int zero_multiplicity = 0;
  double min_root = 0;  // over the nonzero roots
  double max_root = 0;
  double lower = 0;  // Marchenko-Pastur interval
  double upper = 0;
  double margin = 0;  // how far the nonzero roots stick out of the interval (0 if inside)
};

SupportReport mp_support_check(int m, const Rational& lambda);

/// Real roots of a real-rooted rational polynomial by Sturm-free bisection on
/// exact sign changes; roots at zero are counted exactly. Descending.
std::vector<double> real_roots_exact(const Poly<Rational>& p, double tol = 1e-13);

struct RiReport {
  Poly<double> expected;  // E det(xI - sum u_i u_i^T) by enumeration
  Poly<double> laguerre;  // m! (-n)^{-m} L_m^{(k-m)}(n x)
  double deviation = 0;   // max coefficient difference
  double kth_root = 0;    // k-th largest root of the expected polynomial
  double bound = 0;       // (1 - sqrt(k/m))^2 (m/n)
};

/// vectors holds v_1..v_n as columns of an m x n matrix with sum v v^T = I.
RiReport restricted_invertibility_demo(const Matrix<double>& vectors, int k);

}  // namespace ffp
