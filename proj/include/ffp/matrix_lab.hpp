#pragma once

// The symmetric-matrix side: Haar Monte Carlo, mixed discriminants, finite
// free position, additive compounds and majorization.

#include "ffp/convolution.hpp"
#include "ffp/errors.hpp"
#include "ffp/poly.hpp"
#include "ffp/roots.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace ffp {

template <typename Scalar>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix<Scalar> a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw DimensionMismatch("SymMatrix must be square");
    for (Eigen::Index i = 0; i < a_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < a_.cols(); ++j)
        if (a_(i, j) != a_(j, i)) throw NotSymmetric("matrix is not symmetric");
  }

  int dim() const { return static_cast<int>(a_.rows()); }
  const Matrix<Scalar>& matrix() const { return a_; }
  operator const Matrix<Scalar>&() const { return a_; }

  /// Largest eigenvalue (as a double in every mode).
  double max_eigenvalue() const {
    Matrix<double> d(a_.rows(), a_.cols());
    for (Eigen::Index i = 0; i < a_.rows(); ++i)
      for (Eigen::Index j = 0; j < a_.cols(); ++j) d(i, j) = to_double(a_(i, j));
    return Eigen::SelfAdjointEigenSolver<Matrix<double>>(d, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  }

 private:
  Matrix<Scalar> a_;
};

template <typename Scalar>
Matrix<Scalar> identity_matrix(int m) {
  return Matrix<Scalar>::Identity(m, m);
}

inline Matrix<double> to_double(const Matrix<Rational>& a) {
  Matrix<double> d(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) d(i, j) = to_double(a(i, j));
  return d;
}
inline const Matrix<double>& to_double(const Matrix<double>& a) { return a; }

// ---------------------------------------------------------------------------
// Monte Carlo

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
/// of diag(R) folded into Q.
Matrix<double> haar_orthogonal(int m, std::mt19937_64& rng);

enum class ConvolutionKind { add, mult };

struct McResult {
  Poly<double> mean;       // sample-mean characteristic polynomial
  Vector<double> stderrs;  // per coefficient, ascending like mean
  long samples = 0;
};

/// Sample mean of det(xI - A - QBQ^T) or det(xI - AQBQ^T) over Haar Q.
/// Worker w draws from mt19937_64 seeded by seed_seq{seed, w}; the result is
/// fixed by (seed, threads).
McResult mc_expected_charpoly(const Matrix<double>& a, const Matrix<double>& b, ConvolutionKind kind,
                              long samples, std::uint64_t seed, int threads = 1);

/// (mean - exact) / stderr per coefficient; 0 when both sides agree exactly.
Vector<double> z_scores(const McResult& mc, const Poly<double>& exact);

// ---------------------------------------------------------------------------
// Mixed discriminants

/// D(X_1[k_1], ..., X_r[k_r]) with k_i repetitions of X_i, by polarization:
///   sum_{s <= k} prod C(k_i, s_i) (-1)^{m - |s|} det(sum s_i X_i).
template <typename Scalar>
Scalar mixed_discriminant_repeated(const std::vector<Matrix<Scalar>>& xs, const std::vector<int>& reps) {
  if (xs.size() != reps.size()) throw LengthMismatch("mixed_discriminant: one repetition count per matrix");
  int m = 0;
  for (int k : reps) {
    if (k < 0) throw IndexOutOfRange("negative repetition count");
    m += k;
  }
  for (const auto& x : xs)
    if (x.rows() != m || x.cols() != m)
      throw DimensionMismatch("mixed_discriminant: need exactly m matrices of dimension m");
  if (m == 0) return Scalar(1);

  const std::size_t r = xs.size();
  std::vector<int> s(r, 0);
  Scalar total(0);
  while (true) {
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(m, m);
    Scalar weight(1);
    int chosen = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (s[i] == 0) continue;
      sum += xs[i] * Scalar(static_cast<long>(s[i]));
      weight *= binomial_as<Scalar>(reps[i], s[i]);
      chosen += s[i];
    }
    if (chosen > 0) {
      const Scalar d = determinant(sum);
      total += ((m - chosen) % 2 == 0) ? Scalar(weight * d) : Scalar(-(weight * d));
    }
    std::size_t i = 0;
    while (i < r && s[i] == reps[i]) s[i++] = 0;
    if (i == r) break;
    ++s[i];
  }
  return total;
}

/// D(X_1, ..., X_m); normalized so that D(A, ..., A) = m! det A.
template <typename Scalar>
Scalar mixed_discriminant(const std::vector<Matrix<Scalar>>& xs) {
  return mixed_discriminant_repeated(xs, std::vector<int>(xs.size(), 1));
}

/// D(A[i], B[j], I[m-i-j]).
template <typename Scalar>
Scalar md_pattern(const Matrix<Scalar>& a, const Matrix<Scalar>& b, int i, int j) {
  const int m = static_cast<int>(a.rows());
  if (b.rows() != m) throw DimensionMismatch("md_pattern: dimensions differ");
  if (i < 0 || j < 0 || i + j > m) throw IndexOutOfRange("md_pattern: need i + j <= m");
  return mixed_discriminant_repeated<Scalar>({a, b, identity_matrix<Scalar>(m)}, {i, j, m - i - j});
}

/// D(A[i], I[m-i]) read off the characteristic polynomial: i! (m-i)! e_i(A).
template <typename Scalar>
Scalar md_from_charpoly(const Matrix<Scalar>& a, int i) {
  const int m = static_cast<int>(a.rows());
  const Poly<Scalar> p = char_poly(a);
  return factorial_as<Scalar>(i) * factorial_as<Scalar>(m - i) * signed_coeff(p, i, m);
}

/// Permanent of a square matrix, by Ryser's formula.
template <typename Scalar>
Scalar permanent(const Matrix<Scalar>& q) {
  const int n = static_cast<int>(q.rows());
  Scalar total(0);
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    Scalar prod(1);
    for (int i = 0; i < n; ++i) {
      Scalar row(0);
      for (int j = 0; j < n; ++j)
        if (mask & (1UL << j)) row += q(i, j);
      prod *= row;
    }
    const int bits = __builtin_popcountl(mask);
    total += ((n - bits) % 2 == 0) ? prod : Scalar(-prod);
  }
  return total;
}

struct CheckReport {
  bool ok = false;
  double residual = 0;
};

/// Worst residual of m! D(A[j], B[i], I) = D(A[j], I) D(B[i], I) over i + j <= m,
/// each divided by j! i! (m-i-j)! so that diagonal inputs give O(1) numbers.
template <typename Scalar>
std::vector<Scalar> free_position_residuals(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const int m = static_cast<int>(a.rows());
  if (b.rows() != m || b.cols() != m || a.cols() != m) throw DimensionMismatch("free position: dimensions differ");
  std::vector<Scalar> da(m + 1), db(m + 1);
  for (int k = 0; k <= m; ++k) {
    da[k] = md_from_charpoly(a, k);
    db[k] = md_from_charpoly(b, k);
  }
  const Scalar mf = factorial_as<Scalar>(m);
  std::vector<Scalar> out;
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i + j <= m; ++i) {
      const Scalar lhs = md_pattern(a, b, j, i);
      const Scalar norm = mf * factorial_as<Scalar>(j) * factorial_as<Scalar>(i) * factorial_as<Scalar>(m - i - j);
      out.push_back((mf * lhs - da[j] * db[i]) / norm);
    }
  return out;
}

template <typename Scalar>
CheckReport check_free_position(const Matrix<Scalar>& a, const Matrix<Scalar>& b, double tol = 1e-8) {
  double worst = 0;
  bool exact = true;
  for (const Scalar& r : free_position_residuals(a, b)) {
    worst = std::max(worst, magnitude(r));
    exact = exact && is_zero(r);
  }
  if constexpr (is_exact_v<Scalar>) return {exact, worst};
  else return {worst <= tol, worst};
}

/// Whether det(xI - AB) = det(xI - A) [x]_m det(xI - B).
template <typename Scalar>
CheckReport check_mult_identity(const Matrix<Scalar>& a, const Matrix<Scalar>& b, double tol = 1e-8) {
  const int m = static_cast<int>(a.rows());
  if (b.rows() != m) throw DimensionMismatch("check_mult_identity: dimensions differ");
  const Matrix<Scalar> ab = a * b;
  const Poly<Scalar> lhs = char_poly(ab);
  const Poly<Scalar> rhs = multiplicative_convolve(char_poly(a), char_poly(b), m);
  if constexpr (is_exact_v<Scalar>) return {lhs == rhs, max_coeff_diff(lhs, rhs)};
  else {
    const double r = rel_coeff_diff(lhs, rhs);
    return {r <= tol, r};
  }
}

/// Tr(A) D(X_1..X_m) - sum_i D(X_1, .., A X_i, .., X_m).
template <typename Scalar>
Scalar trace_distributivity_residual(const Matrix<Scalar>& a, const std::vector<Matrix<Scalar>>& xs) {
  Scalar rhs(0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Matrix<Scalar>> ys = xs;
    ys[i] = a * xs[i];
    rhs += mixed_discriminant(ys);
  }
  return a.trace() * mixed_discriminant(xs) - rhs;
}

/// sum_t (-1)^t C(k,t) C(n-t, n-j-k-t) = C(n-k, n-j-k) for all j + k <= n <= nmax.
bool binomial_identity_check(int nmax);

/// m! f(i,j,k) = f(i+k,0,0) f(0,j+k,0), f(i,j,k) = D(A[i], B[j], AB[k], I[..]),
/// for a projection A in free position with B. Returns the worst residual,
/// each normalized by m! i! j! k! (m-i-j-k)!.
template <typename Scalar>
CheckReport projection_identity_check(const Matrix<Scalar>& a, const Matrix<Scalar>& b, double tol = 1e-8) {
  const int m = static_cast<int>(a.rows());
  const Matrix<Scalar> a2 = a * a;
  if (magnitude(Scalar((a2 - a).cwiseAbs().maxCoeff())) > (is_exact_v<Scalar> ? 0.0 : tol))
    throw HypothesisViolated("projection_identity_check: A is not a projection");
  if (!check_free_position(a, b, tol).ok)
    throw HypothesisViolated("projection_identity_check: A and B are not in free position");
  const Matrix<Scalar> ab = a * b;
  const Matrix<Scalar> id = identity_matrix<Scalar>(m);
  auto f = [&](int i, int j, int k) {
    return mixed_discriminant_repeated<Scalar>({a, b, ab, id}, {i, j, k, m - i - j - k});
  };
  const Scalar mf = factorial_as<Scalar>(m);
  double worst = 0;
  bool exact = true;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; i + j <= m; ++j)
      for (int k = 0; i + j + k <= m; ++k) {
        const Scalar r = mf * f(i, j, k) - f(i + k, 0, 0) * f(0, j + k, 0);
        const Scalar norm = mf * factorial_as<Scalar>(i) * factorial_as<Scalar>(j) * factorial_as<Scalar>(k) *
                            factorial_as<Scalar>(m - i - j - k);
        worst = std::max(worst, magnitude(Scalar(r / norm)));
        exact = exact && is_zero(r);
      }
  if constexpr (is_exact_v<Scalar>) return {exact, worst};
  else return {worst <= tol, worst};
}

// ---------------------------------------------------------------------------
// Rotation search

struct SearchOptions {
  long budget = 10000;  // objective evaluations
  int restarts = 20;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  double diagonal_weight = 0;  // > 0 also drives diag(R^T B R) to its mean
};

struct SearchResult {
  Matrix<double> rotation;
  double residual = 0;           // root sum of squares of the free-position residuals
  double diagonal_residual = 0;  // max |diag(R^T B R) - tr(B)/m|
  long evaluations = 0;
  bool success = false;
};

/// Heuristic search for R with A and R^T B R in free position: Cayley
/// parameterization, Nelder-Mead from random starts, Levenberg-Marquardt
/// polish. Returns the best rotation found; success is not guaranteed.
SearchResult search_free_rotation(const Matrix<double>& a, const Matrix<double>& b, const SearchOptions& opt = {});

/// As above with A diagonal and tr B = 0, additionally making the diagonal of
/// R^T B R vanish.
SearchResult zero_diagonal_normalize(const Matrix<double>& a, const Matrix<double>& b, SearchOptions opt = {});

/// (I - S)(I + S)^{-1} for the skew matrix with the given upper-triangle entries.
Matrix<double> cayley(const Vector<double>& params, int m);

// ---------------------------------------------------------------------------
// Compounds and majorization

/// Delta_k(A) = d/dt C_k(I + tA) at t = 0, indexed by k-subsets in
/// lexicographic order. Each entry is a sum of column-replaced minors.
template <typename Scalar>
Matrix<Scalar> additive_compound(const Matrix<Scalar>& a, int k) {
  const int m = static_cast<int>(a.rows());
  if (k < 1 || k > m) throw IndexOutOfRange("additive_compound: need 1 <= k <= m");
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    subsets.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == m - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  const int n = static_cast<int>(subsets.size());
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  const Matrix<Scalar> id = identity_matrix<Scalar>(m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Matrix<Scalar> base(k, k), deriv(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          base(i, j) = id(subsets[r][i], subsets[c][j]);
          deriv(i, j) = a(subsets[r][i], subsets[c][j]);
        }
      Scalar total(0);
      for (int j = 0; j < k; ++j) {
        Matrix<Scalar> replaced = base;
        replaced.col(j) = deriv.col(j);
        total += determinant(replaced);
      }
      out(r, c) = total;
    }
  return out;
}

/// Whether x majorizes y: equal totals and dominating prefix sums (both sorted
/// descending internally).
bool majorizes(std::vector<double> x, std::vector<double> y, double tol = 1e-9);

struct FlowReport {
  std::vector<double> ts;
  std::vector<std::vector<double>> roots;  // roots of r_t, descending
  std::vector<std::vector<bool>> majorizes;  // [i][j]: roots(r_{ts[i]}) majorize roots(r_{ts[j]})
  bool ok = false;  // majorizes[i][j] exactly when ts[i] >= ts[j]
};

/// r_t = [p +_m t^m q(x/t)]; q must have zero root sum.
template <typename Scalar>
Poly<Scalar> majorization_member(const Poly<Scalar>& p, const Poly<Scalar>& q, const Scalar& t) {
  const int m = p.degree();
  if (q.degree() != m) throw DegreeMismatch("majorization_flow: degrees differ");
  Vector<Scalar> c(m + 1);
  Scalar tk(1);
  const Poly<Scalar> qm = q.monic();
  for (int k = 0; k <= m; ++k) {
    c(m - k) = qm.coeff(m - k) * tk;
    tk *= t;
  }
  return additive_convolve(p.monic(), Poly<Scalar>(std::move(c)), m);
}

FlowReport majorization_flow(const Poly<double>& p, const Poly<double>& q, const std::vector<double>& ts,
                             double tol = 1e-7);

/// lambda_max(A + tB) on a grid, and whether it is nondecreasing within tol.
struct TrendReport {
  std::vector<double> values;
  bool nondecreasing = false;
};
TrendReport lambda_max_trend(const Matrix<double>& a, const Matrix<double>& b, const std::vector<double>& ts,
                             double tol = 1e-9);

}  // namespace ffp
