#pragma once

// The U transform: for a multiset S with |S| = m, the unique multiset T with
// |T| = m and prod (x - s_i) = E[(x - T)^m].
//
// Moments E[T^k] are the canonical representation. Matching coefficients
// gives p_k = C(m, k) E[T^k] for k <= m; higher moments follow from Newton's
// identities on the elementary symmetric functions of T.

#include "ffp/poly.hpp"
#include "ffp/roots.hpp"

#include <vector>

namespace ffp {

/// E[T^k] for k = 0..kmax, read off a degree-m polynomial whose root
/// multiset has U transform T. Entry 0 is 1.
template <typename Scalar>
std::vector<Scalar> u_moments_of_poly(const Poly<Scalar>& p, int kmax) {
  const int m = p.degree();
  const Poly<Scalar> monic = p.monic();
  std::vector<Scalar> mom(kmax + 1, Scalar(0));
  mom[0] = Scalar(1);
  for (int k = 1; k <= std::min(kmax, m); ++k)
    mom[k] = signed_coeff(monic, k) / binomial_as<Scalar>(m, k);
  if (kmax > m) {
    // extend the power sums of T using its own characteristic polynomial
    std::vector<Scalar> ps(m);
    for (int k = 1; k <= m; ++k) ps[k - 1] = mom[k] * Scalar(static_cast<long>(m));
    const Poly<Scalar> t_poly = coeffs_from_power_sums(ps, m);
    const std::vector<Scalar> all = power_sums_from_coeffs(t_poly, kmax);
    for (int k = m + 1; k <= kmax; ++k) mom[k] = all[k - 1] / Scalar(static_cast<long>(m));
  }
  return mom;
}

/// E[T^k] for k = 1..kmax where T is the U transform of S. No root extraction.
template <typename Scalar>
std::vector<Scalar> u_moments(const Multiset<Scalar>& s, int kmax) {
  std::vector<Scalar> mom = u_moments_of_poly(poly_from_roots(s), kmax);
  mom.erase(mom.begin());
  return mom;
}

/// Monic polynomial prod (x - t_j) whose roots are the U transform of the
/// roots of p.
template <typename Scalar>
Poly<Scalar> u_transform_poly(const Poly<Scalar>& p) {
  const int m = p.degree();
  const std::vector<Scalar> mom = u_moments_of_poly(p, m);
  std::vector<Scalar> ps(m);
  for (int k = 1; k <= m; ++k) ps[k - 1] = mom[k] * Scalar(static_cast<long>(m));
  return coeffs_from_power_sums(ps, m);
}

/// E[(x - T)^m] for a moment sequence E[T^0..m].
template <typename Scalar>
Poly<Scalar> expected_binomial_power(const std::vector<Scalar>& moments, int m) {
  Vector<Scalar> c(m + 1);
  for (int k = 0; k <= m; ++k) {
    Scalar term = binomial_as<Scalar>(m, k) * moments[k];
    c(m - k) = (k % 2 == 0) ? term : Scalar(-term);
  }
  return Poly<Scalar>(std::move(c));
}

inline Multiset<Complex> u_transform(const Multiset<Complex>& s, const RootOptions& opt = {}) {
  if (s.empty()) return {};
  return roots(u_transform_poly(poly_from_roots(s)), opt);
}

inline Multiset<Complex> u_transform(const Multiset<double>& s, const RootOptions& opt = {}) {
  if (s.empty()) return {};
  return roots(u_transform_poly(poly_from_roots(s)), opt);
}

inline Multiset<Complex> u_transform(const Multiset<Rational>& s, const RootOptions& opt = {}) {
  if (s.empty()) return {};
  return roots(to_double(u_transform_poly(poly_from_roots(s))), opt);
}

/// Inverse: expand E[(x - T)^m] and extract its roots.
inline Multiset<Complex> u_inverse(const Multiset<Complex>& t, const RootOptions& opt = {}) {
  const int m = t.size();
  if (m == 0) return {};
  std::vector<Complex> mom(m + 1);
  for (int k = 0; k <= m; ++k) mom[k] = t.moment(k);
  const Poly<Complex> p = expected_binomial_power(mom, m);
  // T comes in conjugate pairs whenever S is real; keep the real path then.
  double imag = 0;
  for (int k = 0; k <= m; ++k) imag = std::max(imag, std::abs(p.coeff(k).imag()));
  double scale = 1;
  for (int k = 0; k <= m; ++k) scale = std::max(scale, std::abs(p.coeff(k)));
  if (imag <= 1e-12 * scale) {
    Vector<double> re(m + 1);
    for (int k = 0; k <= m; ++k) re(k) = p.coeff(k).real();
    return roots(Poly<double>(std::move(re)), opt);
  }
  return roots(p, opt);
}

}  // namespace ffp
