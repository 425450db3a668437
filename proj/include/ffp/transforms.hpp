#pragma once

// m-finite K/R and N/S transforms, represented through their closed forms in
// terms of the U transform. The defining integrals appear only as quadrature
// checks.

#include "ffp/convolution.hpp"
#include "ffp/poly.hpp"
#include "ffp/series.hpp"
#include "ffp/u_transform.hpp"

#include <string>
#include <vector>

namespace ffp {

/// E[e^{-m s T}] mod s^order for the U transform T of the roots of p.
template <typename Scalar>
TruncatedSeries<Scalar> exponential_moment_series(const Poly<Scalar>& p, int order) {
  const int m = p.degree();
  const std::vector<Scalar> mom = u_moments_of_poly(p, order - 1);
  TruncatedSeries<Scalar> e(order);
  Scalar factor(1);  // (-m)^k / k!
  for (int k = 0; k < order; ++k) {
    e[k] = factor * mom[k];
    factor = factor * Scalar(static_cast<long>(-m)) / Scalar(static_cast<long>(k + 1));
  }
  return e;
}

/// R(s) = -(1/m) d/ds ln E[e^{-m s T}], mod s^order (order defaults to m).
template <typename Scalar>
TruncatedSeries<Scalar> finite_r_transform(const Poly<Scalar>& p, int order = -1) {
  const int m = p.degree();
  if (m < 1) throw DegreeMismatch("finite_r_transform: degree must be at least 1");
  if (order < 0) order = m;
  if (order > m) throw IndexOutOfRange("finite R-transform is only determined mod s^m");
  const TruncatedSeries<Scalar> log_series = series_ln(exponential_moment_series(p.monic(), order + 1));
  return series_derive(log_series) * (Scalar(-1) / Scalar(static_cast<long>(m)));
}

/// Pole (1 + 1/m) plus the finite R-transform.
template <typename Scalar>
LaurentK<Scalar> finite_k_transform(const Poly<Scalar>& p) {
  const int m = p.degree();
  return {Scalar(1) + Scalar(1) / Scalar(static_cast<long>(m)), finite_r_transform(p)};
}

struct CheckResult {
  bool ok = false;
  double residual = 0;
};

/// Whether R_p + R_q = R_{p + q} mod s^m, with [p + q] from the coefficient
/// formula. Exact comparison in rational mode.
template <typename Scalar>
CheckResult r_additivity_check(const Poly<Scalar>& p, const Poly<Scalar>& q, double tol = 1e-8) {
  const int m = p.degree();
  if (q.degree() != m) throw DegreeMismatch("r_additivity_check: degrees differ");
  const auto lhs = finite_r_transform(p.monic()) + finite_r_transform(q.monic());
  const auto rhs = finite_r_transform(additive_convolve(p.monic(), q.monic(), m));
  const double residual = max_coeff_diff(lhs, rhs);
  if constexpr (is_exact_v<Scalar>) return {lhs == rhs, residual};
  else return {residual <= tol, residual};
}

/// Whether E[T_p^k] E[T_q^k] = E[T_{p x q}^k] for k = 0..m.
template <typename Scalar>
CheckResult s_multiplicativity_check(const Poly<Scalar>& p, const Poly<Scalar>& q, double tol = 1e-8) {
  const int m = p.degree();
  if (q.degree() != m) throw DegreeMismatch("s_multiplicativity_check: degrees differ");
  const auto mp = u_moments_of_poly(p, m);
  const auto mq = u_moments_of_poly(q, m);
  const auto mpq = u_moments_of_poly(multiplicative_convolve(p.monic(), q.monic(), m), m);
  bool exact = true;
  double residual = 0;
  for (int k = 0; k <= m; ++k) {
    const Scalar lhs = mp[k] * mq[k];
    exact = exact && (lhs == mpq[k]);
    residual = std::max(residual, magnitude(Scalar(lhs - mpq[k])) / std::max(1.0, magnitude(mpq[k])));
  }
  if constexpr (is_exact_v<Scalar>) return {exact, residual};
  else return {residual <= tol, residual};
}

/// f_A(-k/m) = E[(T/rho)^k] for k = 0..m, rho the largest root. Roots must be
/// positive.
std::vector<double> s_moment_values(const Poly<double>& p);
inline std::vector<double> s_moment_values(const Poly<Rational>& p) { return s_moment_values(to_double(p)); }

struct QuadratureReport {
  double integral = 0;
  double closed_form = 0;
  double deviation = 0;  // relative
};

/// Integral of e^{-m x s} p(x) over (rho, inf) against the U-transform closed form.
QuadratureReport quadrature_k_check(const Poly<double>& p, double s);

/// Integral of e^{-m x s} prod(1 - e^{-x} r_i) over (ln rho, inf) against
/// rho^{-ms} sum_i C(m,i) E[(-T/rho)^i] / (ms + i).
QuadratureReport quadrature_n_check(const Poly<double>& p, double s);

double digamma(double x);

/// psi(ms + m + 1) - psi(ms): the log N-transform of the identity.
double identity_s_reference(int m, double s);

struct ConvergenceRow {
  int replication = 0;
  int m = 0;
  std::vector<double> finite;     // finite R-transform coefficients
  std::vector<double> reference;  // Voiculescu R-transform coefficients
};

/// Low-order finite R coefficients of k-fold replications of base against the
/// Voiculescu R-transform of base.
std::vector<ConvergenceRow> r_convergence_study(const Multiset<Rational>& base,
                                                const std::vector<int>& replications, int columns = 4);

std::string to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace ffp
