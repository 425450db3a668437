#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature.

#include "ffp/errors.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>

namespace ffp::quad {

struct Result {
  double value = 0;
  double error = 0;
  int evaluations = 0;
  double magnitude = 0;  // integral of |f|, sets the roundoff floor
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline Result kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double mag = std::abs(fc) * kKronrodWeights[7];
  for (int i = 0; i < 7; ++i) {
    const double x = h * kKronrodNodes[i];
    const double lo = f(c - x), hi = f(c + x);
    kron += kKronrodWeights[i] * (lo + hi);
    mag += kKronrodWeights[i] * (std::abs(lo) + std::abs(hi));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (lo + hi);
  }
  return {kron * h, std::abs((kron - gauss) * h), 15, mag * std::abs(h)};
}

inline Result adapt(const std::function<double(double)>& f, double a, double b, double abs_tol,
                    int depth, Result whole) {
  // below the roundoff floor further bisection only chases noise
  const double floor = 50 * std::numeric_limits<double>::epsilon() * whole.magnitude;
  if (whole.error <= std::max(abs_tol, floor) || depth == 0) return whole;
  const double m = 0.5 * (a + b);
  const Result left = kronrod15(f, a, m);
  const Result right = kronrod15(f, m, b);
  const Result l = adapt(f, a, m, 0.5 * abs_tol, depth - 1, left);
  const Result r = adapt(f, m, b, 0.5 * abs_tol, depth - 1, right);
  return {l.value + r.value, l.error + r.error, whole.evaluations + l.evaluations + r.evaluations,
          l.magnitude + r.magnitude};
}

}  // namespace detail

/// Integral of f over [a, b] to absolute error abs_tol.
inline Result integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 30) {
  const Result whole = detail::kronrod15(f, a, b);
  return detail::adapt(f, a, b, abs_tol, max_depth, whole);
}

/// Integral of f over [0, inf) for an integrand whose decay is bounded by
/// exp(-rate x) times a polynomial. Integrates consecutive panels of growing
/// width until the exponential factor drops below tail_cutoff and the last
/// panel contributes negligibly.
inline Result integrate_half_line(const std::function<double(double)>& f, double rate, double rel_tol,
                                  double tail_cutoff = 1e-18) {
  if (!(rate > 0)) throw QuadratureFailure("half-line quadrature needs a positive decay rate");
  const double cutoff_x = -std::log(tail_cutoff) / rate;
  double width = 1.0 / rate;
  double a = 0;
  Result total;
  for (int panel = 0; panel < 200; ++panel) {
    const double b = a + width;
    const Result coarse = detail::kronrod15(f, a, b);
    const double tol = rel_tol * std::max(std::abs(total.value), std::abs(coarse.value)) + 1e-300;
    const Result piece = detail::adapt(f, a, b, tol, 30, coarse);
    total.value += piece.value;
    total.error += piece.error;
    total.evaluations += piece.evaluations;
    total.magnitude += piece.magnitude;
    a = b;
    if (a >= cutoff_x && std::abs(piece.value) <= 1e-17 * std::abs(total.value)) return total;
    width *= 1.5;
  }
  throw QuadratureFailure("half-line quadrature did not reach the tail cutoff");
}

}  // namespace ffp::quad
