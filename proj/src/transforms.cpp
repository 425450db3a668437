#include "ffp/transforms.hpp"

#include "ffp/quadrature.hpp"
#include "ffp/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ffp {

namespace {

double largest_real_root(const Poly<double>& p) {
  const std::vector<double> r = real_roots(p);
  return r.front();
}

double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

std::vector<double> s_moment_values(const Poly<double>& p) {
  const int m = p.degree();
  const std::vector<double> r = real_roots(p);
  if (r.back() <= 0) throw NonPositiveRoots("s_moment_values: all roots must be positive");
  const double rho = r.front();
  const std::vector<double> mom = u_moments_of_poly(p, m);
  std::vector<double> out(m + 1);
  for (int k = 0; k <= m; ++k) out[k] = mom[k] / std::pow(rho, k);
  return out;
}

QuadratureReport quadrature_k_check(const Poly<double>& p_in, double s) {
  if (!(s > 0)) throw QuadratureFailure("quadrature_k_check needs s > 0");
  const Poly<double> p = p_in.monic();
  const int m = p.degree();
  const double rho = largest_real_root(p);
  const double a = m * s;

  // both sides carry the factor e^{-m rho s}; compare without it
  // p(rho + y) as prod (rho - r_i + y), accurate near y = 0
  std::vector<double> gaps;
  for (double r : real_roots(p)) gaps.push_back(rho - r);
  const auto f = [&](double y) {
    double prod = std::exp(-a * y);
    for (double g : gaps) prod *= g + y;
    return prod;
  };
  const double integral = quad::integrate_half_line(f, a, 1e-13).value;

  const std::vector<double> mom = u_moments_of_poly(p, m);
  double closed = 0;
  for (int i = 0; i <= m; ++i) {
    // E[(rho - T)^{m-i}]
    const int j = m - i;
    double e = 0;
    for (int l = 0; l <= j; ++l)
      e += binomial_as<double>(j, l) * std::pow(rho, j - l) * ((l % 2) ? -mom[l] : mom[l]);
    closed += e * factorial_as<double>(m) / factorial_as<double>(j) / std::pow(a, i + 1);
  }
  const double factor = std::exp(-a * rho);
  return {integral * factor, closed * factor, rel_dev(integral, closed)};
}

QuadratureReport quadrature_n_check(const Poly<double>& p_in, double s) {
  if (!(s > 0)) throw QuadratureFailure("quadrature_n_check needs s > 0");
  const Poly<double> p = p_in.monic();
  const int m = p.degree();
  const double rho = largest_real_root(p);
  if (!(rho > 0)) throw NonPositiveRoots("quadrature_n_check: largest root must be positive");
  const double a = m * s;

  // z^m p(1/z) = prod (1 - z r_i) at z = e^{-y}/rho; each factor is written as
  // (1 - t) - t expm1(-y) so the zero at y = 0 survives without cancellation
  std::vector<double> t;
  for (double r : real_roots(p)) t.push_back(r / rho);
  const auto f = [&](double y) {
    const double em1 = std::expm1(-y);
    double prod = std::exp(-a * y);
    for (double ti : t) prod *= (1 - ti) - ti * em1;
    return prod;
  };
  const double integral = quad::integrate_half_line(f, a, 1e-13).value;

  const std::vector<double> mom = u_moments_of_poly(p, m);
  double closed = 0;
  for (int i = 0; i <= m; ++i) {
    const double e = mom[i] / std::pow(-rho, i);
    closed += binomial_as<double>(m, i) * e / (a + i);
  }
  const double factor = std::pow(rho, -a);
  return {integral * factor, closed * factor, rel_dev(integral, closed)};
}

double digamma(double x) {
  if (x <= 0 && x == std::floor(x)) throw IndexOutOfRange("digamma has poles at non-positive integers");
  double acc = 0;
  if (x < 0) {
    // reflection
    const double pi = 3.14159265358979323846;
    return digamma(1 - x) - pi / std::tan(pi * x);
  }
  while (x < 20) {
    acc -= 1 / x;
    x += 1;
  }
  const double x2 = 1 / (x * x);
  const double series =
      x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 * (1.0 / 132)))));
  return acc + std::log(x) - 0.5 / x - series;
}

double identity_s_reference(int m, double s) { return digamma(m * s + m + 1) - digamma(m * s); }

std::vector<ConvergenceRow> r_convergence_study(const Multiset<Rational>& base,
                                                const std::vector<int>& replications, int columns) {
  if (base.empty()) throw IndexOutOfRange("r_convergence_study: empty base multiset");
  const TruncatedSeries<Rational> ref = voiculescu_r_series(base, columns);
  std::vector<double> reference(columns);
  for (int i = 0; i < columns; ++i) reference[i] = to_double(ref[i]);

  std::vector<ConvergenceRow> rows;
  for (int k : replications) {
    if (k < 1) throw IndexOutOfRange("replication count must be positive");
    const Multiset<Rational> s = base.replicated(k);
    const int m = s.size();
    const int cols = std::min(columns, m);
    const TruncatedSeries<Rational> r = finite_r_transform(poly_from_roots(s), cols);
    ConvergenceRow row{k, m, std::vector<double>(columns, std::nan("")), reference};
    for (int i = 0; i < cols; ++i) row.finite[i] = to_double(r[i]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  const int cols = rows.empty() ? 0 : static_cast<int>(rows.front().finite.size());
  out << "replication,m";
  for (int i = 0; i < cols; ++i) out << ",finite_" << i;
  for (int i = 0; i < cols; ++i) out << ",reference_" << i;
  out << '\n';
  for (const auto& row : rows) {
    out << row.replication << ',' << row.m;
    for (double v : row.finite) out << ',' << v;
    for (double v : row.reference) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace ffp
