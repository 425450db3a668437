#pragma once

// Symmetric additive and multiplicative convolutions of polynomials, and the
// differential-operator algebra behind the additive one.
//
// The degree parameter m is always explicit: inputs of degree <= m are read
// through their signed coefficients p(x) = sum_i x^{m-i} (-1)^i p_i.

#include "ffp/errors.hpp"
#include "ffp/poly.hpp"
#include "ffp/series.hpp"

#include <string>
#include <vector>

namespace ffp {

namespace detail {

template <typename Scalar>
void check_m(int m) {
  if (m < 0) throw IndexOutOfRange("convolution degree must be non-negative");
  if constexpr (!is_exact_v<Scalar>) {
    if (m > 170) throw IndexOutOfRange("float mode supports m <= 170");
  }
}

template <typename Scalar>
void check_degree(const Poly<Scalar>& p, int m, const char* what) {
  if (p.degree() > m)
    throw DegreeExceeded(std::string(what) + ": degree " + std::to_string(p.degree()) +
                         " exceeds m = " + std::to_string(m));
}

}  // namespace detail

/// [p +_m q] by the coefficient formula
///   sum_{i+j<=m} x^{m-i-j} (-1)^{i+j} (m-i)!(m-j)! / ((m-i-j)! m!) p_i q_j.
template <typename Scalar>
Poly<Scalar> additive_convolve(const Poly<Scalar>& p, const Poly<Scalar>& q, int m) {
  detail::check_m<Scalar>(m);
  detail::check_degree(p, m, "additive_convolve");
  detail::check_degree(q, m, "additive_convolve");
  std::vector<Scalar> fact(m + 1);
  fact[0] = Scalar(1);
  for (int k = 1; k <= m; ++k) fact[k] = fact[k - 1] * Scalar(static_cast<long>(k));

  Vector<Scalar> out = Vector<Scalar>::Zero(m + 1);
  for (int i = 0; i <= m; ++i) {
    const Scalar pi = signed_coeff(p, i, m);
    if (is_zero(pi)) continue;
    for (int j = 0; i + j <= m; ++j) {
      const Scalar qj = signed_coeff(q, j, m);
      if (is_zero(qj)) continue;
      Scalar term = fact[m - i] * fact[m - j] / (fact[m - i - j] * fact[m]) * pi * qj;
      if ((i + j) % 2 == 1) term = -term;
      out(m - i - j) += term;
    }
  }
  return Poly<Scalar>(std::move(out));
}

/// [p +_m q] = (1/m!) sum_i p^{(i)}(x) q^{(m-i)}(0), an independent route.
template <typename Scalar>
Poly<Scalar> additive_convolve_derivative_form(const Poly<Scalar>& p, const Poly<Scalar>& q, int m) {
  detail::check_m<Scalar>(m);
  detail::check_degree(p, m, "additive_convolve");
  detail::check_degree(q, m, "additive_convolve");
  Poly<Scalar> acc;
  for (int i = 0; i <= m; ++i) {
    const Scalar q0 = q.derivative(m - i)(Scalar(0));
    if (is_zero(q0)) continue;
    acc = acc + p.derivative(i) * q0;
  }
  return acc * (Scalar(1) / factorial_as<Scalar>(m));
}

/// [p x_m q] = sum_i x^{m-i} (-1)^i p_i q_i / C(m, i); both of degree m.
template <typename Scalar>
Poly<Scalar> multiplicative_convolve(const Poly<Scalar>& p, const Poly<Scalar>& q, int m) {
  detail::check_m<Scalar>(m);
  if (p.degree() != m || q.degree() != m)
    throw DegreeMismatch("multiplicative_convolve: both inputs must have degree " + std::to_string(m));
  Vector<Scalar> out(m + 1);
  for (int i = 0; i <= m; ++i) {
    Scalar term = signed_coeff(p, i, m) * signed_coeff(q, i, m) / binomial_as<Scalar>(m, i);
    out(m - i) = (i % 2 == 0) ? term : Scalar(-term);
  }
  return Poly<Scalar>(std::move(out));
}

// ---------------------------------------------------------------------------
// Differential operators R = sum_i a_i D^i acting on polynomials of degree <= m

template <typename Scalar>
class DiffOperator {
 public:
  DiffOperator() : a_(Vector<Scalar>::Zero(1)) {}
  explicit DiffOperator(Vector<Scalar> a) : a_(std::move(a)) {}

  static DiffOperator identity(int m) {
    Vector<Scalar> a = Vector<Scalar>::Zero(m + 1);
    a(0) = Scalar(1);
    return DiffOperator(std::move(a));
  }

  int order() const { return static_cast<int>(a_.size()) - 1; }
  Scalar coeff(int i) const { return (i >= 0 && i < a_.size()) ? a_(i) : Scalar(0); }
  const Vector<Scalar>& coeffs() const { return a_; }

  /// Product of operators, truncated to D^m (higher powers annihilate x^m).
  friend DiffOperator operator*(const DiffOperator& r, const DiffOperator& s) {
    const int m = std::max(r.order(), s.order());
    Vector<Scalar> c = Vector<Scalar>::Zero(m + 1);
    for (int i = 0; i <= r.order(); ++i)
      for (int j = 0; j <= s.order() && i + j <= m; ++j) c(i + j) += r.a_(i) * s.a_(j);
    return DiffOperator(std::move(c));
  }

  friend bool operator==(const DiffOperator& r, const DiffOperator& s) {
    const int m = std::max(r.order(), s.order());
    for (int i = 0; i <= m; ++i)
      if (r.coeff(i) != s.coeff(i)) return false;
    return true;
  }

 private:
  Vector<Scalar> a_;
};

template <typename Scalar>
Poly<Scalar> apply(const DiffOperator<Scalar>& r, const Poly<Scalar>& p) {
  Poly<Scalar> acc;
  for (int i = 0; i <= std::min(r.order(), p.degree()); ++i)
    if (!is_zero(r.coeff(i))) acc = acc + p.derivative(i) * r.coeff(i);
  return acc;
}

/// The unique R of order m with R{x^m} = p.
template <typename Scalar>
DiffOperator<Scalar> operator_of(const Poly<Scalar>& p, int m) {
  detail::check_m<Scalar>(m);
  detail::check_degree(p, m, "operator_of");
  // D^i x^m = m!/(m-i)! x^{m-i}
  Vector<Scalar> a(m + 1);
  Scalar falling(1);
  for (int i = 0; i <= m; ++i) {
    a(i) = p.coeff(m - i) / falling;
    falling *= Scalar(static_cast<long>(m - i));
  }
  return DiffOperator<Scalar>(std::move(a));
}

/// Multiplicative inverse in C[D]/<D^{m+1}>.
template <typename Scalar>
DiffOperator<Scalar> inverse(const DiffOperator<Scalar>& r, int m) {
  if (is_zero(r.coeff(0))) throw NotInvertible("operator has no identity term");
  TruncatedSeries<Scalar> s(m + 1);
  for (int i = 0; i <= m; ++i) s[i] = r.coeff(i);
  return DiffOperator<Scalar>(series_reciprocal(s).coeffs());
}

/// q with [p +_m q] = x^m.
template <typename Scalar>
Poly<Scalar> additive_inverse(const Poly<Scalar>& p, int m) {
  const DiffOperator<Scalar> r = operator_of(p, m);
  if (is_zero(r.coeff(0))) throw NotInvertible("additive_inverse: deg p must equal m");
  return apply(inverse(r, m), Poly<Scalar>::monomial(m));
}

/// [p +_m q] via the operator product R_p R_q {x^m}; a third route.
template <typename Scalar>
Poly<Scalar> additive_convolve_operator_form(const Poly<Scalar>& p, const Poly<Scalar>& q, int m) {
  return apply(operator_of(p, m) * operator_of(q, m), Poly<Scalar>::monomial(m));
}

/// n-fold [p +_m ... +_m p], by repeated squaring of the operator.
template <typename Scalar>
Poly<Scalar> additive_power(const Poly<Scalar>& p, long n, int m) {
  DiffOperator<Scalar> base = operator_of(p, m);
  DiffOperator<Scalar> acc = DiffOperator<Scalar>::identity(m);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return apply(acc, Poly<Scalar>::monomial(m));
}

/// Left fold of additive_convolve over a list.
template <typename Scalar>
Poly<Scalar> additive_convolve_all(const std::vector<Poly<Scalar>>& ps, int m) {
  Poly<Scalar> acc = Poly<Scalar>::monomial(m);
  for (const auto& p : ps) acc = additive_convolve(acc, p, m);
  return acc;
}

}  // namespace ffp
