#include "ffp/distributions.hpp"

#include "ffp/matrix_lab.hpp"

#include <algorithm>
#include <cmath>

namespace ffp {

long lambda_times_m(int m, const Rational& lambda) {
  if (m < 1) throw IndexOutOfRange("m must be positive");
  const Rational lm = lambda * Rational(m);
  if (denominator(lm) != 1 || lm <= 0)
    throw NonIntegerLambdaM("lambda * m must be a positive integer, got " + to_string(lm));
  return numerator(lm).convert_to<long>();
}

LimitReport clt_run(const Poly<double>& p_in, long n) {
  if (n < 1) throw IndexOutOfRange("clt_run: n must be positive");
  const Poly<double> p = p_in.monic();
  const int m = p.degree();
  const double mean = -p.coeff(m - 1) / m;
  if (std::abs(mean) > 1e-12 * std::max(1.0, p.ascending().cwiseAbs().maxCoeff()))
    throw HypothesisViolated("clt_run: p must have zero root sum");
  // sum r^2 = e_1^2 - 2 e_2 = -2 e_2 here
  const double sigma2 = -2.0 * signed_coeff(p, 2, m) / m;
  const double sq = std::sqrt(static_cast<double>(n));
  const Poly<double> q = p.scale_argument(sq) * std::pow(sq, -m);
  const Poly<double> r = additive_power(q, n, m);
  const Poly<double> target = finite_gaussian<double>(m, 0.0, sigma2);
  return {r, sorted_linf(real_roots(r), real_roots(target))};
}

Poly<Rational> clt_polynomial_exact(const Poly<Rational>& p_in, long n) {
  const long root = std::lround(std::sqrt(static_cast<double>(n)));
  if (root * root != n) throw IndexOutOfRange("exact CLT scaling needs a perfect-square n");
  const Poly<Rational> p = p_in.monic();
  const int m = p.degree();
  const Rational s(root);
  return additive_power(p.scale_argument(s) * ipow(s, -m), n, m);
}

bool poisson_limit_exact(int m, const Rational& lambda) {
  const long lm = lambda_times_m(m, lambda);
  // x^{m-1}(x - 1)
  const Poly<Rational> step = Poly<Rational>::monomial(m) - Poly<Rational>::monomial(m - 1);
  return additive_power(step, lm, m) == finite_poisson<Rational>(m, lambda);
}

namespace {

int sign_at(const Poly<Rational>& p, double x) {
  const Rational v = p(Rational(x));
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

std::vector<double> simple_real_roots(const Poly<Rational>& p, double tol) {
  const int d = p.degree();
  if (d <= 0) return {};
  if (d == 1) return {to_double(Rational(-p.coeff(0) / p.coeff(1)))};
  std::vector<double> crit = simple_real_roots(p.derivative(), tol);
  std::sort(crit.begin(), crit.end());
  double bound = 0;
  for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(to_double(Rational(p.coeff(k) / p.lead()))));
  bound += 1;
  std::vector<double> pts{-bound};
  pts.insert(pts.end(), crit.begin(), crit.end());
  pts.push_back(bound);

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    int sa = sign_at(p, a), sb = sign_at(p, b);
    if (sa == 0) {
      if (out.empty() || out.back() != a) out.push_back(a);
      continue;
    }
    if (sb == 0) {
      out.push_back(b);
      continue;
    }
    if (sa == sb) continue;
    while (b - a > tol * std::max(1.0, std::abs(a))) {
      const double c = 0.5 * (a + b);
      if (c <= a || c >= b) break;
      const int sc = sign_at(p, c);
      if (sc == 0) {
        a = b = c;
        break;
      }
      if (sc == sa) a = c;
      else b = c;
    }
    out.push_back(0.5 * (a + b));
  }
  if (static_cast<int>(out.size()) != d)
    throw NonConvergence("real_roots_exact: polynomial is not real-rooted with simple roots");
  return out;
}

}  // namespace

std::vector<double> real_roots_exact(const Poly<Rational>& p, double tol) {
  int zeros = 0;
  while (zeros < p.degree() && is_zero(p.coeff(zeros))) ++zeros;
  Vector<Rational> rest(p.degree() - zeros + 1);
  for (int k = zeros; k <= p.degree(); ++k) rest(k - zeros) = p.coeff(k);
  std::vector<double> out = simple_real_roots(Poly<Rational>(std::move(rest)), tol);
  out.insert(out.end(), zeros, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SupportReport mp_support_check(int m, const Rational& lambda) {
  const Poly<Rational> p = finite_poisson<Rational>(m, lambda);
  SupportReport rep;
  while (rep.zero_multiplicity < p.degree() && is_zero(p.coeff(rep.zero_multiplicity))) ++rep.zero_multiplicity;
  std::vector<double> nonzero;
  for (double r : real_roots_exact(p))
    if (r != 0.0) nonzero.push_back(r);
  const double l = to_double(lambda);
  rep.lower = std::pow(1 - std::sqrt(l), 2);
  rep.upper = std::pow(1 + std::sqrt(l), 2);
  if (!nonzero.empty()) {
    rep.max_root = *std::max_element(nonzero.begin(), nonzero.end());
    rep.min_root = *std::min_element(nonzero.begin(), nonzero.end());
    rep.margin = std::max({0.0, rep.lower - rep.min_root, rep.max_root - rep.upper});
  }
  return rep;
}

RiReport restricted_invertibility_demo(const Matrix<double>& v, int k) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  if (k < 1 || k >= n) throw IndexOutOfRange("restricted_invertibility_demo: need 1 <= k < n");
  const Matrix<double> frame = v * v.transpose();
  if ((frame - Matrix<double>::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10)
    throw HypothesisViolated("restricted_invertibility_demo: sum v v^T must be the identity");
  if (std::pow(static_cast<double>(n), k) > 1e7) throw BudgetExceeded("n^k exceeds the enumeration budget 1e7");

  std::vector<Matrix<double>> outer(n);
  for (int i = 0; i < n; ++i) outer[i] = v.col(i) * v.col(i).transpose();
  Vector<double> sum = Vector<double>::Zero(m + 1);
  std::vector<int> idx(k, 0);
  long draws = 0;
  while (true) {
    Matrix<double> s = Matrix<double>::Zero(m, m);
    for (int i : idx) s += outer[i];
    s = 0.5 * (s + s.transpose());
    sum += char_poly(s).ascending();
    ++draws;
    int pos = 0;
    while (pos < k && idx[pos] == n - 1) idx[pos++] = 0;
    if (pos == k) break;
    ++idx[pos];
  }

  RiReport rep;
  rep.expected = Poly<double>(Vector<double>(sum / static_cast<double>(draws)));
  const Poly<Rational> lag = laguerre_poly(m, Rational(k - m)).scale_argument(Rational(n)) *
                             (factorial_as<Rational>(m) * ipow(Rational(-n), -m));
  rep.laguerre = to_double(lag);
  rep.deviation = max_coeff_diff(rep.expected, rep.laguerre);
  const std::vector<double> r = real_roots(rep.expected);
  rep.kth_root = r[k - 1];
  rep.bound = std::pow(1 - std::sqrt(static_cast<double>(k) / m), 2) * (static_cast<double>(m) / n);
  return rep;
}

}  // namespace ffp
