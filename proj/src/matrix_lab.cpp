#include "ffp/matrix_lab.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace ffp {

Matrix<double> haar_orthogonal(int m, std::mt19937_64& rng) {
  if (m < 1) throw IndexOutOfRange("haar_orthogonal: m must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix<double> g(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix<double>> qr(g);
  Matrix<double> q = qr.householderQ();
  const Matrix<double>& r = qr.matrixQR();
  for (int j = 0; j < m; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

namespace {

struct Moments {
  Vector<double> sum, sumsq;
};

Moments mc_worker(const Matrix<double>& a, const Matrix<double>& b, const Matrix<double>& sqrt_a,
                  ConvolutionKind kind, long count, std::uint64_t seed, int block) {
  const int m = static_cast<int>(a.rows());
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block)};
  std::mt19937_64 rng(seq);
  Moments acc{Vector<double>::Zero(m + 1), Vector<double>::Zero(m + 1)};
  Eigen::SelfAdjointEigenSolver<Matrix<double>> eig;
  for (long s = 0; s < count; ++s) {
    const Matrix<double> q = haar_orthogonal(m, rng);
    const Matrix<double> rotated = q * b * q.transpose();
    // AQBQ^T is similar to A^{1/2} QBQ^T A^{1/2}, which is symmetric
    Matrix<double> x = (kind == ConvolutionKind::add) ? Matrix<double>(a + rotated)
                                                      : Matrix<double>(sqrt_a * rotated * sqrt_a);
    x = 0.5 * (x + x.transpose());
    eig.compute(x, Eigen::EigenvaluesOnly);
    Vector<double> c = Vector<double>::Zero(m + 1);
    c(0) = 1;
    for (int k = 0; k < m; ++k) {
      const double lambda = eig.eigenvalues()(k);
      for (int j = k + 1; j >= 1; --j) c(j) -= lambda * c(j - 1);
    }
    // c holds leading-first coefficients; store ascending
    const Vector<double> asc = c.reverse();
    acc.sum += asc;
    acc.sumsq += asc.cwiseProduct(asc);
  }
  return acc;
}

}  // namespace

McResult mc_expected_charpoly(const Matrix<double>& a, const Matrix<double>& b, ConvolutionKind kind,
                              long samples, std::uint64_t seed, int threads) {
  const int m = static_cast<int>(a.rows());
  if (samples < 1) throw IndexOutOfRange("mc_expected_charpoly: need at least one sample");
  if (b.rows() != m || a.cols() != m || b.cols() != m) throw DimensionMismatch("mc_expected_charpoly: dimensions differ");
  SymMatrix<double> check_a(a), check_b(b);
  threads = std::max(1, threads);

  Matrix<double> sqrt_a = Matrix<double>::Identity(m, m);
  if (kind == ConvolutionKind::mult) {
    Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(a);
    if (eig.eigenvalues().minCoeff() <= 0)
      throw HypothesisViolated("multiplicative Monte Carlo needs a positive definite A");
    sqrt_a = eig.operatorSqrt();
  }

  // fixed blocks, each with its own stream, summed in block order: the result
  // does not depend on the thread count
  const int blocks = static_cast<int>(std::min<long>(samples, 64));
  std::vector<Moments> parts(blocks);
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(threads, blocks); ++w)
    pool.emplace_back([&, w] {
      for (int blk = w; blk < blocks; blk += threads) {
        const long count = samples / blocks + (blk < samples % blocks ? 1 : 0);
        parts[blk] = mc_worker(a, b, sqrt_a, kind, count, seed, blk);
      }
    });
  for (auto& t : pool) t.join();

  Vector<double> sum = Vector<double>::Zero(m + 1), sumsq = Vector<double>::Zero(m + 1);
  for (const auto& p : parts) {
    sum += p.sum;
    sumsq += p.sumsq;
  }
  const double n = static_cast<double>(samples);
  Vector<double> mean = sum / n;
  Vector<double> se(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double var = samples > 1 ? std::max(0.0, (sumsq(k) - n * mean(k) * mean(k)) / (n - 1)) : 0.0;
    se(k) = std::sqrt(var / n);
  }
  mean(m) = 1;
  se(m) = 0;
  return {Poly<double>(std::move(mean)), std::move(se), samples};
}

Vector<double> z_scores(const McResult& mc, const Poly<double>& exact) {
  const int m = static_cast<int>(mc.stderrs.size()) - 1;
  Vector<double> z(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double diff = mc.mean.coeff(k) - exact.coeff(k);
    const double se = mc.stderrs(k);
    // a zero-variance coefficient is deterministic; allow rounding noise only
    const double floor = 1e-9 * std::max(1.0, std::abs(exact.coeff(k)));
    if (se <= floor) z(k) = std::abs(diff) <= floor ? 0.0 : std::numeric_limits<double>::infinity();
    else z(k) = diff / se;
  }
  return z;
}

bool binomial_identity_check(int nmax) {
  if (nmax < 1) throw IndexOutOfRange("binomial_identity_check: nmax must be positive");
  for (int n = 0; n <= nmax; ++n)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; j + k <= n; ++k) {
        Integer lhs = 0;
        for (int t = 0; t <= k; ++t) {
          const Integer term = binomial(k, t) * binomial(n - t, n - j - k - t);
          lhs += (t % 2 == 0) ? term : Integer(-term);
        }
        if (lhs != binomial(n - k, n - j - k)) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------

Matrix<double> cayley(const Vector<double>& params, int m) {
  Matrix<double> s = Matrix<double>::Zero(m, m);
  int idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      s(i, j) = params(idx);
      s(j, i) = -params(idx);
      ++idx;
    }
  const Matrix<double> id = Matrix<double>::Identity(m, m);
  return (id - s) * (id + s).partialPivLu().inverse();
}

namespace {

class RotationObjective {
 public:
  RotationObjective(const Matrix<double>& a, const Matrix<double>& b, double diagonal_weight)
      : a_(a), b_(b), m_(static_cast<int>(a.rows())), w_(diagonal_weight) {}

  int dim() const { return m_ * (m_ - 1) / 2; }
  long evaluations() const { return evals_; }

  Vector<double> residuals(const Vector<double>& theta) {
    ++evals_;
    const Matrix<double> r = cayley(theta, m_);
    Matrix<double> rb = r.transpose() * b_ * r;
    rb = 0.5 * (rb + rb.transpose());
    const std::vector<double> ff = free_position_residuals(a_, rb);
    const int extra = w_ > 0 ? m_ : 0;
    Vector<double> out(static_cast<int>(ff.size()) + extra);
    for (std::size_t i = 0; i < ff.size(); ++i) out(i) = ff[i];
    if (extra) {
      const double mean = rb.trace() / m_;
      for (int i = 0; i < m_; ++i) out(ff.size() + i) = w_ * (rb(i, i) - mean);
    }
    return out;
  }

  double value(const Vector<double>& theta) { return residuals(theta).squaredNorm(); }

 private:
  const Matrix<double>& a_;
  const Matrix<double>& b_;
  int m_;
  double w_;
  long evals_ = 0;
};

// Nelder-Mead; returns the best vertex.
Vector<double> nelder_mead(RotationObjective& f, Vector<double> x0, double step, long max_evals, double ftol) {
  const int n = static_cast<int>(x0.size());
  std::vector<Vector<double>> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (int i = 0; i < n; ++i) xs[i + 1](i) += step;
  const long start = f.evaluations();
  for (int i = 0; i <= n; ++i) fs[i] = f.value(xs[i]);

  std::vector<int> order(n + 1);
  while (f.evaluations() - start < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return fs[i] < fs[j]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (fs[best] <= ftol) break;
    Vector<double> centroid = Vector<double>::Zero(n);
    for (int i = 0; i < n; ++i) centroid += xs[order[i]];
    centroid /= n;

    const Vector<double> xr = centroid + (centroid - xs[worst]);
    const double fr = f.value(xr);
    if (fr < fs[best]) {
      const Vector<double> xe = centroid + 2.0 * (centroid - xs[worst]);
      const double fe = f.value(xe);
      if (fe < fr) xs[worst] = xe, fs[worst] = fe;
      else xs[worst] = xr, fs[worst] = fr;
    } else if (fr < fs[second]) {
      xs[worst] = xr, fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      const Vector<double> xc = outside ? Vector<double>(centroid + 0.5 * (xr - centroid))
                                        : Vector<double>(centroid + 0.5 * (xs[worst] - centroid));
      const double fc = f.value(xc);
      if (fc < std::min(fr, fs[worst])) {
        xs[worst] = xc, fs[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          const int k = order[i];
          xs[k] = xs[best] + 0.5 * (xs[k] - xs[best]);
          fs[k] = f.value(xs[k]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fs[i] < fs[best]) best = i;
  return xs[best];
}

// Levenberg-Marquardt on the residual vector with a central-difference Jacobian.
Vector<double> levenberg_marquardt(RotationObjective& f, Vector<double> x, long max_evals) {
  const int n = static_cast<int>(x.size());
  const long start = f.evaluations();
  Vector<double> r = f.residuals(x);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  while (f.evaluations() - start + 2 * n + 1 <= max_evals && cost > 1e-32) {
    Matrix<double> jac(r.size(), n);
    for (int i = 0; i < n; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
      Vector<double> xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      jac.col(i) = (f.residuals(xp) - f.residuals(xm)) / (2 * h);
    }
    const Matrix<double> jtj = jac.transpose() * jac;
    const Vector<double> g = jac.transpose() * r;
    bool improved = false;
    for (int attempt = 0; attempt < 8 && f.evaluations() - start < max_evals; ++attempt) {
      Matrix<double> lhs = jtj;
      lhs.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const Vector<double> step = lhs.ldlt().solve(-g);
      const Vector<double> xn = x + step;
      const Vector<double> rn = f.residuals(xn);
      const double cn = rn.squaredNorm();
      if (cn < cost) {
        x = xn, r = rn, cost = cn;
        lambda = std::max(lambda / 10, 1e-12);
        improved = true;
        break;
      }
      lambda *= 10;
    }
    if (!improved) break;
  }
  return x;
}

SearchResult finish(const Matrix<double>& a, const Matrix<double>& b, const Vector<double>& theta, long evals,
                    double tol) {
  const int m = static_cast<int>(a.rows());
  SearchResult res;
  res.rotation = cayley(theta, m);
  Matrix<double> rb = res.rotation.transpose() * b * res.rotation;
  rb = 0.5 * (rb + rb.transpose());
  double sq = 0;
  for (double r : free_position_residuals(a, rb)) sq += r * r;
  res.residual = std::sqrt(sq);
  const double mean = rb.trace() / m;
  for (int i = 0; i < m; ++i) res.diagonal_residual = std::max(res.diagonal_residual, std::abs(rb(i, i) - mean));
  res.evaluations = evals;
  res.success = res.residual <= tol;
  return res;
}

SearchResult run_search(const Matrix<double>& a, const Matrix<double>& b, const SearchOptions& opt) {
  const int m = static_cast<int>(a.rows());
  if (b.rows() != m || a.cols() != m || b.cols() != m) throw DimensionMismatch("rotation search: dimensions differ");
  RotationObjective f(a, b, opt.diagonal_weight);
  const int n = f.dim();
  const Vector<double> zero = Vector<double>::Zero(std::max(n, 0));
  if (n == 0) return finish(a, b, zero, 0, opt.tol);

  auto good = [&](const Vector<double>& x) {
    const Vector<double> r = f.residuals(x);
    return std::sqrt(r.squaredNorm()) <= opt.tol * 0.5;
  };

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector<double> best = zero;
  double best_value = f.value(zero);
  if (best_value <= 0.25 * opt.tol * opt.tol) return finish(a, b, zero, f.evaluations(), opt.tol);

  const long per_restart = std::max<long>(1, opt.budget / std::max(1, opt.restarts));
  for (int restart = 0; restart < opt.restarts && f.evaluations() < opt.budget; ++restart) {
    Vector<double> x0(n);
    for (int i = 0; i < n; ++i) x0(i) = restart == 0 ? 0.0 : unif(rng);
    const long remaining = opt.budget - f.evaluations();
    const long nm_budget = std::min(remaining, per_restart * 2 / 3);
    Vector<double> x = nelder_mead(f, x0, 0.3, nm_budget, 1e-10);
    x = levenberg_marquardt(f, x, std::min(opt.budget - f.evaluations(), per_restart - per_restart * 2 / 3 + 1));
    const double v = f.value(x);
    if (v < best_value) best_value = v, best = x;
    if (good(best)) break;
  }
  return finish(a, b, best, f.evaluations(), opt.tol);
}

}  // namespace

SearchResult search_free_rotation(const Matrix<double>& a, const Matrix<double>& b, const SearchOptions& opt) {
  SearchOptions o = opt;
  o.diagonal_weight = 0;
  return run_search(a, b, o);
}

SearchResult zero_diagonal_normalize(const Matrix<double>& a, const Matrix<double>& b, SearchOptions opt) {
  const int m = static_cast<int>(a.rows());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && a(i, j) != 0) throw HypothesisViolated("zero_diagonal_normalize: A must be diagonal");
  if (std::abs(b.trace()) > 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()))
    throw HypothesisViolated("zero_diagonal_normalize: B must have zero trace");
  if (opt.diagonal_weight <= 0) opt.diagonal_weight = 1;
  SearchResult res = run_search(a, b, opt);
  res.success = res.residual <= opt.tol && res.diagonal_residual <= opt.tol;
  return res;
}

// ---------------------------------------------------------------------------

bool majorizes(std::vector<double> x, std::vector<double> y, double tol) {
  if (x.size() != y.size()) throw LengthMismatch("majorizes: lengths differ");
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    if (sx < sy - tol) return false;
  }
  return std::abs(sx - sy) <= tol;
}

FlowReport majorization_flow(const Poly<double>& p, const Poly<double>& q, const std::vector<double>& ts, double tol) {
  const int m = p.degree();
  if (std::abs(q.monic().coeff(m - 1)) > 1e-9 * std::max(1.0, q.monic().ascending().cwiseAbs().maxCoeff()))
    throw HypothesisViolated("majorization_flow: q must have zero root sum");
  FlowReport rep;
  rep.ts = ts;
  for (double t : ts) {
    if (t < 0) throw IndexOutOfRange("majorization_flow: t must be nonnegative");
    rep.roots.push_back(real_roots(majorization_member(p, q, t)));
  }
  const std::size_t n = ts.size();
  rep.majorizes.assign(n, std::vector<bool>(n, false));
  rep.ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double scale = 1;
      for (double r : rep.roots[i]) scale = std::max(scale, std::abs(r));
      rep.majorizes[i][j] = majorizes(rep.roots[i], rep.roots[j], tol * scale * m);
      if (ts[i] >= ts[j] && !rep.majorizes[i][j]) rep.ok = false;
    }
  return rep;
}

TrendReport lambda_max_trend(const Matrix<double>& a, const Matrix<double>& b, const std::vector<double>& ts,
                             double tol) {
  TrendReport rep;
  rep.nondecreasing = true;
  for (double t : ts) {
    Matrix<double> x = a + t * b;
    x = 0.5 * (x + x.transpose());
    rep.values.push_back(SymMatrix<double>(x).max_eigenvalue());
    if (rep.values.size() > 1 && rep.values.back() < rep.values[rep.values.size() - 2] - tol)
      rep.nondecreasing = false;
  }
  return rep;
}

}  // namespace ffp
