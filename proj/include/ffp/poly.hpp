#pragma once

// Univariate polynomials and root multisets.
//
// Poly stores coefficients in ascending powers internally (coeff(k) is the
// coefficient of x^k); serialization flips to leading-first.

#include "ffp/errors.hpp"
#include "ffp/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

namespace ffp {

template <typename Scalar>
class Poly {
 public:
  using scalar_type = Scalar;

  Poly() : c_(Vector<Scalar>::Zero(1)) {}

  /// From ascending coefficients.
  explicit Poly(Vector<Scalar> ascending) : c_(std::move(ascending)) {
    if (c_.size() == 0) c_ = Vector<Scalar>::Zero(1);
    trim();
  }

  static Poly from_ascending(const std::vector<Scalar>& c) {
    Vector<Scalar> v(std::max<std::size_t>(c.size(), 1));
    v.setZero();
    for (std::size_t i = 0; i < c.size(); ++i) v(i) = c[i];
    return Poly(std::move(v));
  }

  /// From leading-first coefficients, the order used on the wire and the CLI.
  static Poly from_leading(const std::vector<Scalar>& c) {
    std::vector<Scalar> asc(c.rbegin(), c.rend());
    return from_ascending(asc);
  }

  static Poly constant(Scalar a) { return from_ascending({a}); }

  /// x^n
  static Poly monomial(int n, Scalar a = Scalar(1)) {
    Vector<Scalar> v = Vector<Scalar>::Zero(n + 1);
    v(n) = a;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && ffp::is_zero(c_(0)); }
  bool is_monic() const { return lead() == Scalar(1); }

  const Scalar& lead() const { return c_(c_.size() - 1); }

  /// Coefficient of x^k; zero outside the stored range.
  Scalar coeff(int k) const {
    return (k >= 0 && k < c_.size()) ? c_(k) : Scalar(0);
  }

  const Vector<Scalar>& ascending() const { return c_; }

  std::vector<Scalar> leading_first() const {
    std::vector<Scalar> out(c_.size());
    for (Eigen::Index i = 0; i < c_.size(); ++i) out[i] = c_(c_.size() - 1 - i);
    return out;
  }

  template <typename T>
  T operator()(const T& x) const {
    T acc = T(c_(c_.size() - 1));
    for (Eigen::Index i = c_.size() - 2; i >= 0; --i) acc = acc * x + T(c_(i));
    return acc;
  }

  Poly derivative(int order = 1) const {
    if (order <= 0) return *this;
    if (order > degree()) return Poly();
    Vector<Scalar> d(c_.size() - order);
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      Scalar f(1);
      for (int t = 0; t < order; ++t) f *= Scalar(static_cast<long>(k + order - t));
      d(k) = c_(k + order) * f;
    }
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) throw NotInvertible("cannot normalize the zero polynomial");
    Vector<Scalar> v = c_ / lead();
    return Poly(std::move(v));
  }

  /// p(a x), exact coefficient scaling.
  Poly scale_argument(const Scalar& a) const {
    Vector<Scalar> v = c_;
    Scalar f(1);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      v(k) *= f;
      f *= a;
    }
    return Poly(std::move(v));
  }

  /// p(x + a)
  Poly shift_argument(const Scalar& a) const {
    // Horner in the shifted basis.
    Poly acc = Poly::constant(lead());
    const Poly lin = Poly::from_ascending({a, Scalar(1)});
    for (Eigen::Index i = c_.size() - 2; i >= 0; --i) acc = acc * lin + Poly::constant(c_(i));
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const Eigen::Index n = std::max(a.c_.size(), b.c_.size());
    Vector<Scalar> v = Vector<Scalar>::Zero(n);
    v.head(a.c_.size()) += a.c_;
    v.head(b.c_.size()) += b.c_;
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b * Scalar(-1); }
  friend Poly operator*(const Poly& a, const Scalar& s) {
    Vector<Scalar> v = a.c_ * s;
    return Poly(std::move(v));
  }
  friend Poly operator*(const Scalar& s, const Poly& a) { return a * s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Vector<Scalar> v = Vector<Scalar>::Zero(a.c_.size() + b.c_.size() - 1);
    for (Eigen::Index i = 0; i < a.c_.size(); ++i)
      for (Eigen::Index j = 0; j < b.c_.size(); ++j) v(i + j) += a.c_(i) * b.c_(j);
    return Poly(std::move(v));
  }

  /// Exact coefficient identity; meaningful only in rational mode.
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.c_.size() == b.c_.size() && a.c_ == b.c_;
  }

 private:
  void trim() {
    Eigen::Index n = c_.size();
    while (n > 1 && ffp::is_zero(c_(n - 1))) --n;
    if (n != c_.size()) c_.conservativeResize(n);
  }

  Vector<Scalar> c_;
};

/// Largest absolute coefficient difference, for float comparisons.
template <typename Scalar>
double max_coeff_diff(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  const int n = std::max(a.degree(), b.degree());
  double worst = 0;
  for (int k = 0; k <= n; ++k) worst = std::max(worst, magnitude(Scalar(a.coeff(k) - b.coeff(k))));
  return worst;
}

/// Relative variant of max_coeff_diff, scaled by the largest coefficient of b.
template <typename Scalar>
double rel_coeff_diff(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  double scale = 0;
  for (int k = 0; k <= b.degree(); ++k) scale = std::max(scale, magnitude(b.coeff(k)));
  return max_coeff_diff(a, b) / std::max(scale, 1.0);
}

inline Poly<double> to_double(const Poly<Rational>& p) {
  Vector<double> v(p.ascending().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = to_double(p.ascending()(i));
  return Poly<double>(std::move(v));
}

inline Poly<Rational> to_rational(const Poly<double>& p) {
  Vector<Rational> v(p.ascending().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Rational(p.ascending()(i));
  return Poly<Rational>(std::move(v));
}

inline const Poly<Rational>& to_rational(const Poly<Rational>& p) { return p; }
inline const Poly<double>& to_double(const Poly<double>& p) { return p; }

// ---------------------------------------------------------------------------
// Multiset

/// Finite multiset of scalars (roots, eigenvalues, or a U transform).
/// Order is not significant; elements are stored as given.
template <typename Scalar>
class Multiset {
 public:
  Multiset() = default;
  Multiset(std::initializer_list<Scalar> xs) : xs_(xs) {}
  explicit Multiset(std::vector<Scalar> xs) : xs_(std::move(xs)) {}

  static Multiset repeated(const Scalar& c, int m) { return Multiset(std::vector<Scalar>(m, c)); }

  int size() const { return static_cast<int>(xs_.size()); }
  bool empty() const { return xs_.empty(); }
  const std::vector<Scalar>& elements() const { return xs_; }
  const Scalar& operator[](int i) const { return xs_[i]; }

  /// (1/m) sum s_i^k; moment(0) = 1.
  Scalar moment(int k) const {
    Scalar acc(0);
    for (const auto& s : xs_) acc += ipow(s, k);
    return acc / Scalar(static_cast<long>(xs_.size()));
  }

  Scalar mean() const { return moment(1); }

  Multiset shifted(const Scalar& c) const {
    auto ys = xs_;
    for (auto& y : ys) y += c;
    return Multiset(std::move(ys));
  }

  Multiset scaled(const Scalar& c) const {
    auto ys = xs_;
    for (auto& y : ys) y *= c;
    return Multiset(std::move(ys));
  }

  /// k-fold replication, a km-realization of the same distribution.
  Multiset replicated(int k) const {
    std::vector<Scalar> ys;
    ys.reserve(xs_.size() * k);
    for (int r = 0; r < k; ++r) ys.insert(ys.end(), xs_.begin(), xs_.end());
    return Multiset(std::move(ys));
  }

 private:
  std::vector<Scalar> xs_;
};

// ---------------------------------------------------------------------------
// Construction and Newton identities

template <typename Scalar>
Poly<Scalar> poly_from_roots(const Multiset<Scalar>& roots) {
  Vector<Scalar> c = Vector<Scalar>::Zero(roots.size() + 1);
  c(0) = Scalar(1);
  int deg = 0;
  for (const auto& r : roots.elements()) {
    // multiply by (x - r)
    for (int k = deg + 1; k >= 1; --k) c(k) = c(k - 1) - r * c(k);
    c(0) = -r * c(0);
    ++deg;
  }
  return Poly<Scalar>(std::move(c));
}

/// p_i in p(x) = sum_i x^{m-i} (-1)^i p_i, relative to the nominal degree m.
template <typename Scalar>
Scalar signed_coeff(const Poly<Scalar>& p, int i, int m) {
  if (i < 0 || i > m) throw IndexOutOfRange("signed_coeff: index " + std::to_string(i) +
                                            " outside [0, " + std::to_string(m) + "]");
  Scalar c = p.coeff(m - i);
  return (i % 2 == 0) ? c : Scalar(-c);
}

template <typename Scalar>
Scalar signed_coeff(const Poly<Scalar>& p, int i) {
  return signed_coeff(p, i, p.degree());
}

/// Power sums sum r^k for k = 1..kmax of the roots of a monic p, via Newton's
/// identities (no root extraction).
template <typename Scalar>
std::vector<Scalar> power_sums_from_coeffs(const Poly<Scalar>& p, int kmax) {
  const int m = p.degree();
  std::vector<Scalar> e(m + 1);
  for (int i = 0; i <= m; ++i) e[i] = signed_coeff(p, i) / p.lead();
  std::vector<Scalar> ps(kmax + 1, Scalar(0));
  for (int k = 1; k <= kmax; ++k) {
    Scalar acc(0);
    const int top = std::min(k - 1, m);
    for (int i = 1; i <= top; ++i) {
      const Scalar term = e[i] * ps[k - i];
      if (i % 2 == 1) acc += term; else acc -= term;
    }
    if (k <= m) {
      const Scalar term = Scalar(static_cast<long>(k)) * e[k];
      if (k % 2 == 1) acc += term; else acc -= term;
    }
    ps[k] = acc;
  }
  ps.erase(ps.begin());
  return ps;
}

/// Inverse of power_sums_from_coeffs: the monic degree-m polynomial whose
/// roots have power sums ps[0..m-1] (= P_1..P_m).
template <typename Scalar>
Poly<Scalar> coeffs_from_power_sums(const std::vector<Scalar>& ps, int m) {
  if (static_cast<int>(ps.size()) < m) throw LengthMismatch("need m power sums");
  std::vector<Scalar> e(m + 1, Scalar(0));
  e[0] = Scalar(1);
  for (int k = 1; k <= m; ++k) {
    Scalar acc(0);
    for (int i = 1; i <= k; ++i) {
      const Scalar term = e[k - i] * ps[i - 1];
      if (i % 2 == 1) acc += term; else acc -= term;
    }
    e[k] = acc / Scalar(static_cast<long>(k));
  }
  Vector<Scalar> c(m + 1);
  for (int i = 0; i <= m; ++i) c(m - i) = (i % 2 == 0) ? e[i] : Scalar(-e[i]);
  return Poly<Scalar>(std::move(c));
}

// ---------------------------------------------------------------------------
// Characteristic polynomials

/// det(xI - A) for any square A. Exact scalars use Faddeev-LeVerrier; doubles
/// go through the eigenvalues, which keeps the symmetric case well conditioned.
template <typename Scalar>
Poly<Scalar> char_poly(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("char_poly needs a square matrix");
  const Eigen::Index m = a.rows();
  if constexpr (is_exact_v<Scalar>) {
    Vector<Scalar> c = Vector<Scalar>::Zero(m + 1);
    c(m) = Scalar(1);
    Matrix<Scalar> mk = Matrix<Scalar>::Zero(m, m);
    for (Eigen::Index k = 1; k <= m; ++k) {
      mk = a * mk;
      mk.diagonal().array() += c(m - k + 1);
      const Matrix<Scalar> amk = a * mk;
      c(m - k) = -amk.trace() / Scalar(static_cast<long>(k));
    }
    return Poly<Scalar>(std::move(c));
  } else {
    if (m == 0) return Poly<Scalar>::constant(Scalar(1));
    if ((a - a.transpose()).cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Matrix<double>> es(a, Eigen::EigenvaluesOnly);
      std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
      return poly_from_roots(Multiset<double>(ev));
    }
    Eigen::ComplexEigenSolver<Matrix<Complex>> es(a.template cast<Complex>(), false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
    const Poly<Complex> pc = poly_from_roots(Multiset<Complex>(ev));
    Vector<double> c(m + 1);
    for (Eigen::Index k = 0; k <= m; ++k) c(k) = pc.coeff(static_cast<int>(k)).real();
    return Poly<double>(std::move(c));
  }
}

/// Determinant by Gaussian elimination; exact for rationals.
template <typename Scalar>
Scalar determinant(Matrix<Scalar> a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant needs a square matrix");
  if constexpr (is_exact_v<Scalar>) {
    const Eigen::Index n = a.rows();
    Scalar det(1);
    for (Eigen::Index col = 0; col < n; ++col) {
      Eigen::Index piv = col;
      while (piv < n && is_zero(a(piv, col))) ++piv;
      if (piv == n) return Scalar(0);
      if (piv != col) {
        a.row(piv).swap(a.row(col));
        det = -det;
      }
      det *= a(col, col);
      for (Eigen::Index r = col + 1; r < n; ++r) {
        if (is_zero(a(r, col))) continue;
        const Scalar f = a(r, col) / a(col, col);
        for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      }
    }
    return det;
  } else {
    if (a.rows() == 0) return Scalar(1);
    return a.partialPivLu().determinant();
  }
}

}  // namespace ffp
