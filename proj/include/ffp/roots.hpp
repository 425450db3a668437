#pragma once

#include "ffp/poly.hpp"

#include <vector>

namespace ffp {

struct RootOptions {
  /// Coefficient-wise reconstruction tolerance and imaginary-part cutoff for
  /// declaring a root of a real polynomial real.
  double tol = 1e-7;
  int max_iterations = 500;
};

/// All complex roots of p (degree >= 1) with multiplicity. Companion-matrix
/// eigenvalues seed an Aberth-Ehrlich polish; clusters that reconstruct p at
/// least as well when collapsed to their centroid are treated as multiple
/// roots. Throws NonConvergence if the roots fail to reproduce p/lead.
Multiset<Complex> roots(const Poly<Complex>& p, const RootOptions& opt = {});

/// Real-coefficient overload; complex roots come back in exact conjugate pairs.
Multiset<Complex> roots(const Poly<double>& p, const RootOptions& opt = {});

/// Real parts of the roots, sorted descending. Throws NonConvergence when a
/// root has imaginary part above opt.tol (scaled by its magnitude).
std::vector<double> real_roots(const Poly<double>& p, const RootOptions& opt = {});

inline std::vector<double> real_roots(const Poly<Rational>& p, const RootOptions& opt = {}) {
  return real_roots(to_double(p), opt);
}

/// Largest imaginary part among the roots.
double max_imag(const Multiset<Complex>& r);

/// Sorted-descending l-infinity distance between two equally sized root lists.
double sorted_linf(std::vector<double> a, std::vector<double> b);

/// Matching distance between complex multisets (greedy nearest pairing).
double multiset_distance(const Multiset<Complex>& a, const Multiset<Complex>& b);

}  // namespace ffp
