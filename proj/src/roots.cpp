#include "ffp/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ffp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double coeff_scale(const Vector<Complex>& monic) {
  double s = 0;
  for (Eigen::Index i = 0; i < monic.size(); ++i) s = std::max(s, std::abs(monic(i)));
  return std::max(s, 1.0);
}

// Max coefficient error of prod (x - r) against the monic target.
double reconstruction_error(const std::vector<Complex>& rs, const Vector<Complex>& monic) {
  const Poly<Complex> rebuilt = poly_from_roots(Multiset<Complex>(rs));
  double worst = 0;
  for (Eigen::Index k = 0; k < monic.size(); ++k)
    worst = std::max(worst, std::abs(rebuilt.coeff(static_cast<int>(k)) - monic(k)));
  return worst;
}

std::vector<Complex> companion_eigenvalues(const Vector<Complex>& monic) {
  const Eigen::Index n = monic.size() - 1;
  Matrix<Complex> c = Matrix<Complex>::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -monic(i);
  Eigen::ComplexEigenSolver<Matrix<Complex>> es(c, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

void aberth_polish(std::vector<Complex>& z, const Poly<Complex>& p, int max_iter) {
  const Poly<Complex> dp = p.derivative();
  const std::size_t n = z.size();
  for (int it = 0; it < max_iter; ++it) {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex pv = p(z[i]);
      if (pv == Complex(0)) continue;
      const Complex ratio = pv / dp(z[i]);
      Complex repulsion = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
      const Complex w = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    if (worst <= 4 * kEps) break;
  }
}

// Collapse clusters to their centroid whenever doing so does not make the
// reconstruction worse; this recovers exact multiple roots.
// A k-fold root of p is a simple root of p^{(k-1)}; polish the centroid there.
Complex refine_multiple(Complex x, const Poly<Complex>& p, int k) {
  const Poly<Complex> f = p.derivative(k - 1);
  const Poly<Complex> df = f.derivative();
  for (int it = 0; it < 8; ++it) {
    const Complex d = df(x);
    if (d == Complex(0)) break;
    const Complex step = f(x) / d;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    x -= step;
    if (std::abs(step) <= 2 * kEps * (1 + std::abs(x))) break;
  }
  return x;
}

void merge_clusters(std::vector<Complex>& z, const Vector<Complex>& monic) {
  const Poly<Complex> p{Vector<Complex>(monic)};
  const double scale = coeff_scale(monic);
  const double root_scale =
      std::max(1.0, std::accumulate(z.begin(), z.end(), 0.0,
                                    [](double a, Complex b) { return std::max(a, std::abs(b)); }));
  std::vector<bool> merged(z.size(), false);
  for (double radius : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 5e-2}) {
    const double r = radius * root_scale;
    // single-linkage groups at this radius
    std::vector<int> label(z.size(), -1);
    int groups = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (label[i] >= 0) continue;
      std::vector<std::size_t> stack{i};
      label[i] = groups;
      while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < z.size(); ++b)
          if (label[b] < 0 && std::abs(z[a] - z[b]) <= r) {
            label[b] = groups;
            stack.push_back(b);
          }
      }
      ++groups;
    }
    for (int g = 0; g < groups; ++g) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < z.size(); ++i)
        if (label[i] == g) members.push_back(i);
      if (members.size() < 2) continue;
      bool all_merged = true;
      for (auto i : members) all_merged = all_merged && merged[i];
      if (all_merged) {
        bool same = true;
        for (auto i : members) same = same && z[i] == z[members[0]];
        if (same) continue;
      }
      Complex centroid = 0;
      for (auto i : members) centroid += z[i];
      centroid /= static_cast<double>(members.size());
      const Complex refined = refine_multiple(centroid, p, static_cast<int>(members.size()));
      if (std::abs(refined - centroid) <= r) centroid = refined;
      std::vector<Complex> trial = z;
      for (auto i : members) trial[i] = centroid;
      const double before = reconstruction_error(z, monic);
      const double after = reconstruction_error(trial, monic);
      if (after <= 4 * before + 64 * kEps * scale) {
        z = std::move(trial);
        for (auto i : members) merged[i] = true;
      }
    }
  }
}

}  // namespace

Multiset<Complex> roots(const Poly<Complex>& p, const RootOptions& opt) {
  if (p.degree() < 1) throw IndexOutOfRange("roots: degree must be at least 1");
  const Poly<Complex> monic = p.monic();
  const Vector<Complex>& c = monic.ascending();

  // exact zero roots from trailing zero coefficients
  int zeros = 0;
  while (zeros < monic.degree() && c(zeros) == Complex(0)) ++zeros;
  std::vector<Complex> z(zeros, Complex(0));
  if (zeros == monic.degree()) return Multiset<Complex>(std::move(z));

  const Poly<Complex> reduced(Vector<Complex>(c.tail(c.size() - zeros)));
  std::vector<Complex> nz = companion_eigenvalues(reduced.ascending());
  aberth_polish(nz, reduced, opt.max_iterations);
  merge_clusters(nz, reduced.ascending());

  const double err = reconstruction_error(nz, reduced.ascending());
  if (!(err <= opt.tol * coeff_scale(reduced.ascending())))
    throw NonConvergence("roots: reconstruction error " + std::to_string(err));
  z.insert(z.end(), nz.begin(), nz.end());
  return Multiset<Complex>(std::move(z));
}

Multiset<Complex> roots(const Poly<double>& p, const RootOptions& opt) {
  Vector<Complex> cc = p.ascending().cast<Complex>();
  std::vector<Complex> z = roots(Poly<Complex>(std::move(cc)), opt).elements();

  // enforce conjugate symmetry
  std::vector<Complex> upper, lower, out;
  for (const Complex& r : z) {
    if (std::abs(r.imag()) <= opt.tol * std::max(1.0, std::abs(r))) out.emplace_back(r.real(), 0.0);
    else if (r.imag() > 0) upper.push_back(r);
    else lower.push_back(r);
  }
  while (!upper.empty() && !lower.empty()) {
    const Complex u = upper.back();
    upper.pop_back();
    auto best = std::min_element(lower.begin(), lower.end(), [&](Complex a, Complex b) {
      return std::abs(a - std::conj(u)) < std::abs(b - std::conj(u));
    });
    const Complex avg = 0.5 * (u + std::conj(*best));
    lower.erase(best);
    out.push_back(avg);
    out.push_back(std::conj(avg));
  }
  // unpaired leftovers can only be near-real
  for (const Complex& r : upper) out.emplace_back(r.real(), 0.0);
  for (const Complex& r : lower) out.emplace_back(r.real(), 0.0);
  return Multiset<Complex>(std::move(out));
}

std::vector<double> real_roots(const Poly<double>& p, const RootOptions& opt) {
  const Multiset<Complex> rs = roots(p, opt);
  std::vector<double> out;
  out.reserve(rs.size());
  for (const Complex& r : rs.elements()) {
    if (std::abs(r.imag()) > opt.tol * std::max(1.0, std::abs(r)))
      throw NonConvergence("real_roots: root with imaginary part " + std::to_string(r.imag()));
    out.push_back(r.real());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double max_imag(const Multiset<Complex>& r) {
  double worst = 0;
  for (const Complex& z : r.elements()) worst = std::max(worst, std::abs(z.imag()));
  return worst;
}

double sorted_linf(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw LengthMismatch("sorted_linf: sizes differ");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double multiset_distance(const Multiset<Complex>& a, const Multiset<Complex>& b) {
  if (a.size() != b.size()) throw LengthMismatch("multiset_distance: sizes differ");
  std::vector<Complex> rest = b.elements();
  double worst = 0;
  for (const Complex& x : a.elements()) {
    auto it = std::min_element(rest.begin(), rest.end(), [&](Complex u, Complex v) {
      return std::abs(u - x) < std::abs(v - x);
    });
    worst = std::max(worst, std::abs(*it - x));
    rest.erase(it);
  }
  return worst;
}

}  // namespace ffp
