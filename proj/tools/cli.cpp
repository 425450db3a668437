#include "cli.hpp"

#include "ffp/ffp.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ffp::cli {
namespace {

using io::Json;

struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

struct Context {
  std::string mode = "rational";
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out_path;

  Json result;
  bool ok = true;
  std::string csv;  // tabular form, written when --out is given
};

// Converts a flag's text, tagging any failure with the flag name.
template <typename F>
auto convert(const std::string& flag, F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(flag, e.what());
  }
}

Json parse_json(const std::string& flag, const std::string& text) {
  return convert(flag, [&] { return Json::parse(text); });
}

// Leading-first array, {"coeffs": [...]}, or {"roots": [...]}.
template <typename S>
Poly<S> poly_arg(const std::string& flag, const std::string& text) {
  const Json j = parse_json(flag, text);
  return convert(flag, [&] {
    if (j.is_object() && j.contains("roots")) return poly_from_roots(io::multiset_from<S>(j.at("roots")));
    return io::poly_from<S>(j);
  });
}

template <typename S>
Multiset<S> multiset_arg(const std::string& flag, const std::string& text) {
  const Json j = parse_json(flag, text);
  return convert(flag, [&] { return io::multiset_from<S>(j); });
}

template <typename S>
Matrix<S> matrix_arg(const std::string& flag, const std::string& text, bool symmetric = true) {
  const Json j = parse_json(flag, text);
  return convert(flag, [&] {
    Matrix<S> a = io::matrix_from<S>(j);
    if (symmetric) return SymMatrix<S>(std::move(a)).matrix();
    return a;
  });
}

Rational rational_arg(const std::string& flag, const std::string& text) {
  return convert(flag, [&] { return parse_rational(text); });
}

template <typename F>
void with_mode(const Context& ctx, F&& f) {
  if (ctx.mode == "float") f(double{});
  else f(Rational{});
}

Json complex_list(std::vector<Complex> zs) {
  std::sort(zs.begin(), zs.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  Json out = Json::array();
  for (const Complex& z : zs) out.push_back(io::scalar_json(z));
  return out;
}

std::string roots_csv(std::vector<Complex> zs) {
  std::sort(zs.begin(), zs.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  std::ostringstream s;
  s.precision(17);
  s << "re,im\n";
  for (const Complex& z : zs) s << z.real() << ',' << z.imag() << '\n';
  return s.str();
}

template <typename S>
std::vector<Complex> roots_of(const Poly<S>& p) {
  if (p.degree() < 1) return {};
  return roots(to_double(p)).elements();
}

template <typename S>
int degree_or(int m, const Poly<S>& p) {
  return m > 0 ? m : p.degree();
}

// Default pair for matrix commands: A = diag(1..m), B = 2I + e_1 e_m^T + e_m e_1^T.
Matrix<Rational> default_a(int m) {
  Matrix<Rational> a = Matrix<Rational>::Zero(m, m);
  for (int i = 0; i < m; ++i) a(i, i) = i + 1;
  return a;
}

Matrix<Rational> default_b(int m) {
  Matrix<Rational> b = identity_matrix<Rational>(m) * Rational(2);
  b(0, m - 1) += 1;
  b(m - 1, 0) += 1;
  return b;
}

using Action = std::function<void(Context&)>;
using Setup = std::function<Action(CLI::App&)>;

struct Leaf {
  Command info;
  Setup setup;
};

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d = {
      {"conv", "finite free convolutions of polynomials"},
      {"conv add", "symmetric additive convolution"},
      {"conv mult", "symmetric multiplicative convolution"},
      {"conv inverse", "additive inverse under the additive convolution"},
      {"utransform", "U transform of a multiset"},
      {"utransform forward", "S -> T with prod (x - s_i) = E (x - T)^m"},
      {"utransform inverse", "T -> S"},
      {"utransform moments", "moments of T, power sums and elementary symmetric values of S"},
      {"rtransform", "finite R- and K-transforms"},
      {"stransform", "finite S-transform data and the reference modified S-transform"},
      {"check", "identity checks"},
      {"check quadrature-k", "K-transform integral against its closed form"},
      {"check quadrature-n", "N-transform integral against its closed form"},
      {"check r-add", "R-transform additivity"},
      {"check s-mult", "S-transform multiplicativity"},
      {"check binomial", "alternating binomial identity"},
      {"check trace-dist", "trace distributivity of the mixed discriminant"},
      {"study", "convergence tables"},
      {"study r-convergence", "finite R-transform of replicated multisets against the limit"},
      {"mc", "Monte Carlo over Haar rotations"},
      {"mc verify", "sample-mean characteristic polynomial against the exact convolution"},
      {"freepos", "finite free position"},
      {"freepos check", "coefficient identities for a given pair"},
      {"freepos search", "search for a rotation putting the pair in free position"},
      {"freepos normalize", "as search, also zeroing the diagonal of the rotated B"},
      {"md", "mixed discriminants"},
      {"md eval", "D(X_1..X_m), or D(A[i], B[j], I[m-i-j])"},
      {"compound", "additive compound matrix"},
      {"majorize", "majorization"},
      {"majorize check", "whether x majorizes y"},
      {"majorize flow", "majorization chain along the dilation flow"},
      {"dist", "finite distributions"},
      {"dist hermite", "finite Gaussian"},
      {"dist poisson", "finite free Poisson"},
      {"dist compound", "finite compound Poisson"},
      {"limit", "limit theorems"},
      {"limit lln", "law of large numbers"},
      {"limit clt", "central limit theorem"},
      {"limit poisson", "Poisson limit, exact"},
      {"ri", "restricted invertibility"},
      {"ri demo", "expected characteristic polynomial of a random k-subset of a frame"},
  };
  return d;
}

std::string describe(const std::string& path) {
  const auto it = descriptions().find(path);
  return it == descriptions().end() ? std::string() : it->second;
}

std::vector<Leaf> make_leaves() {
  std::vector<Leaf> v;

  // conv ------------------------------------------------------------------
  v.push_back({{"conv add",
                {"additive_convolve", "operator_of", "apply", "poly_from_roots", "roots"},
                {"conv", "add", "--p", "[1,-6,11,-6]", "--q", "[1,-6,11,-6]", "--m", "3"}},
               [](CLI::App& app) -> Action {
                 auto o = std::make_shared<std::map<std::string, std::string>>();
                 auto m = std::make_shared<int>(0);
                 app.add_option("--p", (*o)["p"], "first polynomial")->required();
                 app.add_option("--q", (*o)["q"], "second polynomial")->required();
                 app.add_option("--m", *m, "convolution degree (default deg p)");
                 app.add_option("--route", (*o)["route"], "closed|derivative|operator")
                     ->check(CLI::IsMember({"closed", "derivative", "operator"}));
                 return [o, m](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Poly<S> p = poly_arg<S>("--p", (*o)["p"]), q = poly_arg<S>("--q", (*o)["q"]);
                     const int deg = degree_or(*m, p);
                     const std::string& route = (*o)["route"];
                     Poly<S> r;
                     if (route == "derivative") r = additive_convolve_derivative_form(p, q, deg);
                     else if (route == "operator") r = additive_convolve_operator_form(p, q, deg);
                     else r = additive_convolve(p, q, deg);
                     ctx.result = io::poly_json(r);
                     ctx.csv = roots_csv(roots_of(r));
                   });
                 };
               }});
  v.push_back({{"conv mult",
                {"multiplicative_convolve"},
                {"conv", "mult", "--p", "[1,-6,11,-6]", "--q", "[1,-6,11,-6]"}},
               [](CLI::App& app) -> Action {
                 auto p = std::make_shared<std::string>(), q = std::make_shared<std::string>();
                 auto m = std::make_shared<int>(0);
                 app.add_option("--p", *p)->required();
                 app.add_option("--q", *q)->required();
                 app.add_option("--m", *m);
                 return [p, q, m](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Poly<S> pp = poly_arg<S>("--p", *p);
                     const Poly<S> r = multiplicative_convolve(pp, poly_arg<S>("--q", *q), degree_or(*m, pp));
                     ctx.result = io::poly_json(r);
                     ctx.csv = roots_csv(roots_of(r));
                   });
                 };
               }});
  v.push_back({{"conv inverse", {"additive_inverse"}, {"conv", "inverse", "--p", "[1,0,-1]"}},
               [](CLI::App& app) -> Action {
                 auto p = std::make_shared<std::string>();
                 auto m = std::make_shared<int>(0);
                 app.add_option("--p", *p)->required();
                 app.add_option("--m", *m);
                 return [p, m](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Poly<S> pp = poly_arg<S>("--p", *p);
                     ctx.result = io::poly_json(additive_inverse(pp, degree_or(*m, pp)));
                   });
                 };
               }});

  // utransform -------------------------------------------------------------
  v.push_back({{"utransform forward", {"u_transform"}, {"utransform", "forward", "--s", "[-1,1]"}},
               [](CLI::App& app) -> Action {
                 auto s = std::make_shared<std::string>();
                 app.add_option("--s", *s, "multiset S")->required();
                 return [s](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Multiset<S> ms = multiset_arg<S>("--s", *s);
                     const auto t = u_transform(ms).elements();
                     ctx.result = Json{{"t", complex_list(t)},
                                       {"poly", io::poly_json(u_transform_poly(poly_from_roots(ms)))}};
                     ctx.csv = roots_csv(t);
                   });
                 };
               }});
  v.push_back({{"utransform inverse", {"u_inverse"},
                {"utransform", "inverse", "--t", R"([{"re":0,"im":1},{"re":0,"im":-1}])"}},
               [](CLI::App& app) -> Action {
                 auto t = std::make_shared<std::string>();
                 app.add_option("--t", *t, "multiset T (complex entries as {re, im})")->required();
                 return [t](Context& ctx) {
                   const auto s = u_inverse(multiset_arg<Complex>("--t", *t)).elements();
                   ctx.result = Json{{"s", complex_list(s)}};
                   ctx.csv = roots_csv(s);
                 };
               }});
  v.push_back({{"utransform moments", {"u_moments", "power_sums_from_coeffs", "signed_coeff"},
                {"utransform", "moments", "--s", "[-1,-1,1,1]", "--k", "4"}},
               [](CLI::App& app) -> Action {
                 auto s = std::make_shared<std::string>();
                 auto k = std::make_shared<int>(-1);
                 app.add_option("--s", *s)->required();
                 app.add_option("--k", *k, "highest moment (default m)");
                 return [s, k](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Multiset<S> ms = multiset_arg<S>("--s", *s);
                     const int kmax = *k >= 0 ? *k : ms.size();
                     const Poly<S> p = poly_from_roots(ms);
                     std::vector<S> e;
                     for (int i = 0; i <= p.degree(); ++i) e.push_back(signed_coeff(p, i));
                     ctx.result = Json{{"moments", io::vector_json(u_moments(ms, kmax))},
                                       {"power_sums", io::vector_json(power_sums_from_coeffs(p, kmax))},
                                       {"elementary", io::vector_json(e)}};
                   });
                 };
               }});

  // transforms --------------------------------------------------------------
  v.push_back({{"rtransform",
                {"finite_r_transform", "finite_k_transform", "series_ln", "series_exp", "series_derive", "series_mul",
                 "series_add"},
                {"rtransform", "--p", "[1,0,-1]"}},
               [](CLI::App& app) -> Action {
                 auto p = std::make_shared<std::string>();
                 auto order = std::make_shared<int>(-1);
                 app.add_option("--p", *p)->required();
                 app.add_option("--order", *order, "truncation order (default m)");
                 return [p, order](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Poly<S> pp = poly_arg<S>("--p", *p);
                     if (*order > pp.degree()) throw UsageError("--order", "must not exceed the degree");
                     const auto k = finite_k_transform(pp);
                     ctx.result = Json{{"r", io::series_json(finite_r_transform(pp, *order))},
                                       {"k", Json{{"pole", io::scalar_json(k.pole)}, {"series", io::series_json(k.tail)}}}};
                   });
                 };
               }});
  v.push_back({{"stransform", {"s_moment_values", "voiculescu_s_values", "series_revert"},
                {"stransform", "--p", "[1,-3,2]"}},
               [](CLI::App& app) -> Action {
                 auto p = std::make_shared<std::string>();
                 app.add_option("--p", *p, "positive-rooted polynomial")->required();
                 return [p](Context& ctx) {
                   const Poly<double> pp = to_double(poly_arg<Rational>("--p", *p));
                   const std::vector<double> r = real_roots(pp);
                   ctx.result = Json{{"values", io::vector_json(s_moment_values(pp))},
                                     {"reference", io::series_json(voiculescu_s_values(Multiset<double>(r), pp.degree()))}};
                 };
               }});

  // check --------------------------------------------------------------------
  auto quadrature = [](bool n_form) {
    return [n_form](CLI::App& app) -> Action {
      auto p = std::make_shared<std::string>();
      auto s = std::make_shared<std::vector<double>>(std::vector<double>{0.25, 0.5, 1, 2, 4});
      auto tol = std::make_shared<double>(1e-6);
      app.add_option("--p", *p)->required();
      app.add_option("--s", *s, "comma-separated grid of s > 0")->delimiter(',');
      app.add_option("--tol", *tol);
      return [=](Context& ctx) {
        const Poly<double> pp = to_double(poly_arg<Rational>("--p", *p));
        Json rows = Json::array();
        for (double si : *s) {
          if (!(si > 0)) throw UsageError("--s", "grid values must be positive");
          const QuadratureReport r = n_form ? quadrature_n_check(pp, si) : quadrature_k_check(pp, si);
          Json row{{"s", si}, {"integral", r.integral}, {"closed_form", r.closed_form}, {"deviation", r.deviation}};
          if (n_form) row["identity_log_n"] = identity_s_reference(pp.degree(), si);
          ctx.ok = ctx.ok && r.deviation <= *tol;
          rows.push_back(row);
        }
        ctx.result = Json{{"ok", ctx.ok}, {"rows", rows}};
      };
    };
  };
  v.push_back({{"check quadrature-k", {"quadrature_k_check"}, {"check", "quadrature-k", "--p", "[1,-2,1]"}},
               quadrature(false)});
  v.push_back({{"check quadrature-n", {"quadrature_n_check", "identity_s_reference"},
                {"check", "quadrature-n", "--p", "[1,-3,2]"}},
               quadrature(true)});
  auto pair_check = [](bool mult) {
    return [mult](CLI::App& app) -> Action {
      auto p = std::make_shared<std::string>(), q = std::make_shared<std::string>();
      auto tol = std::make_shared<double>(1e-8);
      app.add_option("--p", *p)->required();
      app.add_option("--q", *q)->required();
      app.add_option("--tol", *tol);
      return [=](Context& ctx) {
        with_mode(ctx, [&](auto tag) {
          using S = decltype(tag);
          const Poly<S> pp = poly_arg<S>("--p", *p), qq = poly_arg<S>("--q", *q);
          const CheckResult r = mult ? s_multiplicativity_check(pp, qq, *tol) : r_additivity_check(pp, qq, *tol);
          ctx.ok = r.ok;
          ctx.result = Json{{"ok", r.ok}, {"residual", r.residual}};
        });
      };
    };
  };
  v.push_back({{"check r-add", {"r_additivity_check"}, {"check", "r-add", "--p", "[1,0,-1]", "--q", "[1,0,-1]"}},
               pair_check(false)});
  v.push_back({{"check s-mult", {"s_multiplicativity_check"},
                {"check", "s-mult", "--p", "[1,-6,11,-6]", "--q", "[1,-6,11,-6]"}},
               pair_check(true)});
  v.push_back({{"check binomial", {"binomial_identity_check"}, {"check", "binomial", "--nmax", "12"}},
               [](CLI::App& app) -> Action {
                 auto n = std::make_shared<int>(12);
                 app.add_option("--nmax", *n)->check(CLI::Range(0, 60));
                 return [n](Context& ctx) {
                   ctx.ok = binomial_identity_check(*n);
                   ctx.result = Json{{"ok", ctx.ok}, {"nmax", *n}};
                 };
               }});
  v.push_back({{"check trace-dist", {"trace_distributivity_check", "mixed_discriminant"},
                {"check", "trace-dist", "--a", "[[1,2],[2,0]]", "--xs", "[[[1,0],[0,2]],[[0,1],[1,3]]]"}},
               [](CLI::App& app) -> Action {
                 auto a = std::make_shared<std::string>(), xs = std::make_shared<std::string>();
                 auto tol = std::make_shared<double>(1e-8);
                 app.add_option("--a", *a)->required();
                 app.add_option("--xs", *xs, "array of m symmetric m x m matrices")->required();
                 app.add_option("--tol", *tol);
                 return [=](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Matrix<S> am = matrix_arg<S>("--a", *a, false);
                     const Json j = parse_json("--xs", *xs);
                     if (!j.is_array()) throw UsageError("--xs", "expected an array of matrices");
                     std::vector<Matrix<S>> ms;
                     for (const auto& x : j) ms.push_back(matrix_arg<S>("--xs", x.dump()));
                     const S r = trace_distributivity_residual(am, ms);
                     ctx.ok = is_exact_v<S> ? is_zero(r) : magnitude(r) <= *tol;
                     ctx.result = Json{{"ok", ctx.ok}, {"residual", io::scalar_json(r)}};
                   });
                 };
               }});

  // study -------------------------------------------------------------------
  v.push_back({{"study r-convergence", {"r_convergence_study", "voiculescu_r_series"},
                {"study", "r-convergence", "--base", "[-1,1]", "--reps", "1,2,4,8"}},
               [](CLI::App& app) -> Action {
                 auto base = std::make_shared<std::string>();
                 auto reps = std::make_shared<std::vector<int>>(std::vector<int>{1, 2, 4, 8, 16, 32, 64});
                 auto cols = std::make_shared<int>(4);
                 app.add_option("--base", *base)->required();
                 app.add_option("--reps", *reps, "replication counts")->delimiter(',');
                 app.add_option("--columns", *cols)->check(CLI::Range(1, 16));
                 return [=](Context& ctx) {
                   const auto rows = r_convergence_study(multiset_arg<Rational>("--base", *base), *reps, *cols);
                   Json out = Json::array();
                   for (const auto& r : rows)
                     out.push_back(Json{{"replication", r.replication}, {"m", r.m}, {"finite", r.finite}, {"reference", r.reference}});
                   ctx.result = Json{{"rows", out}};
                   ctx.csv = to_csv(rows);
                 };
               }});

  // mc ----------------------------------------------------------------------
  v.push_back({{"mc verify", {"mc_expected_charpoly", "haar_orthogonal", "char_poly"},
                {"mc", "verify", "--kind", "add", "--m", "3", "--samples", "2000"}},
               [](CLI::App& app) -> Action {
                 auto kind = std::make_shared<std::string>("add");
                 auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
                 auto m = std::make_shared<int>(3);
                 auto samples = std::make_shared<long>(200000);
                 auto zmax = std::make_shared<double>(4);
                 app.add_option("--kind", *kind)->check(CLI::IsMember({"add", "mult"}));
                 app.add_option("--a", *a);
                 app.add_option("--b", *b);
                 app.add_option("--m", *m, "dimension of the default pair")->check(CLI::Range(1, 64));
                 app.add_option("--samples", *samples)->check(CLI::Range(2L, 1000000000L));
                 app.add_option("--zmax", *zmax);
                 return [=](Context& ctx) {
                   const Matrix<double> am = a->empty() ? to_double(default_a(*m)) : matrix_arg<double>("--a", *a);
                   const Matrix<double> bm = b->empty() ? to_double(default_b(*m)) : matrix_arg<double>("--b", *b);
                   if (am.rows() != bm.rows()) throw UsageError("--b", "dimension differs from --a");
                   const int dim = static_cast<int>(am.rows());
                   const bool add = *kind == "add";
                   // the reference is exact: doubles convert to rationals without loss
                   const Matrix<Rational> ar = am.unaryExpr([](double x) { return Rational(x); });
                   const Matrix<Rational> br = bm.unaryExpr([](double x) { return Rational(x); });
                   const Poly<Rational> pa = char_poly(ar), pb = char_poly(br);
                   const Poly<double> exact =
                       to_double(add ? additive_convolve(pa, pb, dim) : multiplicative_convolve(pa, pb, dim));
                   const McResult mc = mc_expected_charpoly(am, bm, add ? ConvolutionKind::add : ConvolutionKind::mult,
                                                            *samples, ctx.seed, ctx.threads);
                   const Vector<double> z = z_scores(mc, exact);
                   const double worst = z.size() ? z.cwiseAbs().maxCoeff() : 0.0;
                   ctx.ok = worst <= *zmax;
                   // leading first, like the coefficients
                   std::vector<double> zs(z.data(), z.data() + z.size()), se(mc.stderrs.data(), mc.stderrs.data() + mc.stderrs.size());
                   std::reverse(zs.begin(), zs.end());
                   std::reverse(se.begin(), se.end());
                   ctx.result = Json{{"ok", ctx.ok},       {"kind", *kind},          {"samples", mc.samples},
                                     {"seed", ctx.seed},   {"mean", io::poly_json(mc.mean)}, {"exact", io::poly_json(exact)},
                                     {"stderr", se},       {"z", zs},                {"max_z", worst}};
                 };
               }});

  // freepos -----------------------------------------------------------------
  v.push_back({{"freepos check", {"check_free_position", "check_mult_identity", "projection_identity_check"},
                {"freepos", "check", "--a", "[[1,0],[0,0]]", "--b", "[[1,1],[1,1]]", "--mult", "--projection"}},
               [](CLI::App& app) -> Action {
                 auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
                 auto mult = std::make_shared<bool>(false), proj = std::make_shared<bool>(false);
                 auto tol = std::make_shared<double>(1e-8);
                 app.add_option("--a", *a)->required();
                 app.add_option("--b", *b)->required();
                 app.add_flag("--mult", *mult, "also test det(xI - AB) against the multiplicative convolution");
                 app.add_flag("--projection", *proj, "also test the projection identities (A a projection)");
                 app.add_option("--tol", *tol);
                 return [=](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Matrix<S> am = matrix_arg<S>("--a", *a), bm = matrix_arg<S>("--b", *b);
                     if (am.rows() != bm.rows()) throw UsageError("--b", "dimension differs from --a");
                     const CheckReport fp = check_free_position(am, bm, *tol);
                     ctx.ok = fp.ok;
                     ctx.result = Json{{"free_position", Json{{"ok", fp.ok}, {"residual", fp.residual}}}};
                     if (*mult) {
                       const CheckReport r = check_mult_identity(am, bm, *tol);
                       ctx.ok = ctx.ok && r.ok;
                       ctx.result["mult"] = Json{{"ok", r.ok}, {"residual", r.residual}};
                     }
                     if (*proj) {
                       const CheckReport r = projection_identity_check(am, bm, *tol);
                       ctx.ok = ctx.ok && r.ok;
                       ctx.result["projection"] = Json{{"ok", r.ok}, {"residual", r.residual}};
                     }
                     ctx.result["ok"] = ctx.ok;
                   });
                 };
               }});
  auto search = [](bool normalize) {
    return [normalize](CLI::App& app) -> Action {
      auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
      auto opt = std::make_shared<SearchOptions>();
      app.add_option("--a", *a)->required();
      app.add_option("--b", *b)->required();
      app.add_option("--budget", opt->budget, "objective evaluations")->check(CLI::Range(1L, 100000000L));
      app.add_option("--restarts", opt->restarts)->check(CLI::Range(1, 10000));
      app.add_option("--tol", opt->tol);
      return [=](Context& ctx) {
        const Matrix<double> am = matrix_arg<double>("--a", *a), bm = matrix_arg<double>("--b", *b);
        if (am.rows() != bm.rows()) throw UsageError("--b", "dimension differs from --a");
        SearchOptions o = *opt;
        o.seed = ctx.seed;
        const SearchResult r = normalize ? zero_diagonal_normalize(am, bm, o) : search_free_rotation(am, bm, o);
        const Matrix<double> rotated = r.rotation.transpose() * bm * r.rotation;
        ctx.ok = r.success;
        ctx.result = Json{{"ok", r.success},
                          {"residual", r.residual},
                          {"diagonal_residual", r.diagonal_residual},
                          {"evaluations", r.evaluations},
                          {"rotation", io::matrix_json(r.rotation)},
                          {"rotated_b", io::matrix_json(rotated)}};
      };
    };
  };
  v.push_back({{"freepos search", {"search_free_rotation"},
                {"freepos", "search", "--a", "[[1,0],[0,2]]", "--b", "[[3,0],[0,5]]"}},
               search(false)});
  v.push_back({{"freepos normalize", {"zero_diagonal_normalize"},
                {"freepos", "normalize", "--a", "[[1,0],[0,2]]", "--b", "[[1,0],[0,-1]]"}},
               search(true)});

  // md ----------------------------------------------------------------------
  v.push_back({{"md eval", {"mixed_discriminant", "md_pattern"},
                {"md", "eval", "--xs", "[[[1,0],[0,2]],[[0,1],[1,3]]]"}},
               [](CLI::App& app) -> Action {
                 auto xs = std::make_shared<std::string>(), a = std::make_shared<std::string>(),
                      b = std::make_shared<std::string>();
                 auto i = std::make_shared<int>(0), j = std::make_shared<int>(0);
                 auto o_xs = app.add_option("--xs", *xs, "array of m symmetric m x m matrices");
                 auto o_a = app.add_option("--a", *a, "pattern mode: D(A[i], B[j], I[m-i-j])");
                 app.add_option("--b", *b);
                 app.add_option("--i", *i);
                 app.add_option("--j", *j);
                 o_xs->excludes(o_a);
                 return [=](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     if (!xs->empty()) {
                       const Json jx = parse_json("--xs", *xs);
                       if (!jx.is_array()) throw UsageError("--xs", "expected an array of matrices");
                       std::vector<Matrix<S>> ms;
                       for (const auto& x : jx) ms.push_back(matrix_arg<S>("--xs", x.dump()));
                       const S d = convert("--xs", [&] { return mixed_discriminant(ms); });
                       ctx.result = Json{{"value", io::scalar_json(d)}};
                     } else if (!a->empty()) {
                       if (b->empty()) throw UsageError("--b", "required with --a");
                       const Matrix<S> am = matrix_arg<S>("--a", *a), bm = matrix_arg<S>("--b", *b);
                       const S d = convert("--i", [&] { return md_pattern(am, bm, *i, *j); });
                       ctx.result = Json{{"value", io::scalar_json(d)}};
                     } else {
                       throw UsageError("--xs", "give --xs or --a/--b");
                     }
                   });
                 };
               }});

  // compound ----------------------------------------------------------------
  v.push_back({{"compound", {"additive_compound"}, {"compound", "--a", "[[1,0,0],[0,2,0],[0,0,3]]", "--k", "2"}},
               [](CLI::App& app) -> Action {
                 auto a = std::make_shared<std::string>();
                 auto k = std::make_shared<int>(1);
                 app.add_option("--a", *a)->required();
                 app.add_option("--k", *k)->required();
                 return [=](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Matrix<S> am = matrix_arg<S>("--a", *a, false);
                     if (*k < 1 || *k > am.rows()) throw UsageError("--k", "need 1 <= k <= m");
                     ctx.result = Json{{"matrix", io::matrix_json(additive_compound(am, *k))}};
                   });
                 };
               }});

  // majorize ----------------------------------------------------------------
  v.push_back({{"majorize check", {"majorizes"}, {"majorize", "check", "--x", "3,0", "--y", "2,1"}},
               [](CLI::App& app) -> Action {
                 auto x = std::make_shared<std::vector<double>>(), y = std::make_shared<std::vector<double>>();
                 auto tol = std::make_shared<double>(1e-9);
                 app.add_option("--x", *x)->required()->delimiter(',');
                 app.add_option("--y", *y)->required()->delimiter(',');
                 app.add_option("--tol", *tol);
                 return [=](Context& ctx) {
                   if (x->size() != y->size()) throw UsageError("--y", "length differs from --x");
                   const bool r = majorizes(*x, *y, *tol);
                   ctx.result = Json{{"majorizes", r}};
                 };
               }});
  v.push_back({{"majorize flow", {"majorization_flow"},
                {"majorize", "flow", "--p", "[1,-6,11,-6]", "--q", "[1,0,-1,0]"}},
               [](CLI::App& app) -> Action {
                 auto p = std::make_shared<std::string>(), q = std::make_shared<std::string>();
                 auto ts = std::make_shared<std::vector<double>>(std::vector<double>{0, 0.5, 1, 2});
                 auto tol = std::make_shared<double>(1e-7);
                 app.add_option("--p", *p)->required();
                 app.add_option("--q", *q, "zero root sum")->required();
                 app.add_option("--ts", *ts)->delimiter(',');
                 app.add_option("--tol", *tol);
                 return [=](Context& ctx) {
                   const FlowReport r = majorization_flow(to_double(poly_arg<Rational>("--p", *p)),
                                                          to_double(poly_arg<Rational>("--q", *q)), *ts, *tol);
                   ctx.ok = r.ok;
                   ctx.result = Json{{"ok", r.ok}, {"ts", r.ts}, {"roots", r.roots}, {"majorizes", r.majorizes}};
                   std::ostringstream s;
                   s.precision(17);
                   s << "t,index,root\n";
                   for (std::size_t i = 0; i < r.ts.size(); ++i)
                     for (std::size_t j = 0; j < r.roots[i].size(); ++j) s << r.ts[i] << ',' << j << ',' << r.roots[i][j] << '\n';
                   ctx.csv = s.str();
                 };
               }});

  // dist --------------------------------------------------------------------
  v.push_back({{"dist hermite", {"finite_gaussian"}, {"dist", "hermite", "--m", "3"}},
               [](CLI::App& app) -> Action {
                 auto m = std::make_shared<int>(0);
                 auto mu = std::make_shared<std::string>("0"), sigma2 = std::make_shared<std::string>("1");
                 app.add_option("--m", *m)->required()->check(CLI::Range(1, 200));
                 app.add_option("--mu", *mu);
                 app.add_option("--sigma2", *sigma2);
                 return [=](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const S mean = to_scalar<S>(rational_arg("--mu", *mu));
                     const S var = to_scalar<S>(rational_arg("--sigma2", *sigma2));
                     if (!(var > S(0))) throw UsageError("--sigma2", "must be positive");
                     const Poly<S> g = finite_gaussian<S>(*m, mean, var);
                     ctx.result = io::poly_json(g);
                     ctx.csv = roots_csv(roots_of(g));
                   });
                 };
               }});
  v.push_back({{"dist poisson", {"finite_poisson", "laguerre", "mp_support_check"},
                {"dist", "poisson", "--m", "4", "--lambda", "1", "--support", "--laguerre-at", "1/2"}},
               [](CLI::App& app) -> Action {
                 auto m = std::make_shared<int>(0);
                 auto lambda = std::make_shared<std::string>("1"), at = std::make_shared<std::string>();
                 auto support = std::make_shared<bool>(false);
                 app.add_option("--m", *m)->required()->check(CLI::Range(1, 200));
                 app.add_option("--lambda", *lambda, "rational with lambda*m a positive integer");
                 app.add_flag("--support", *support, "report the root support against [(1-sqrt l)^2, (1+sqrt l)^2]");
                 app.add_option("--laguerre-at", *at, "also evaluate L_m^{((lambda-1)m)} at this point");
                 return [=](Context& ctx) {
                   const Rational l = rational_arg("--lambda", *lambda);
                   convert("--lambda", [&] { return lambda_times_m(*m, l); });
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Poly<S> p = finite_poisson<S>(*m, l);
                     ctx.result = io::poly_json(p);
                     if (!at->empty()) {
                       const S x = to_scalar<S>(rational_arg("--laguerre-at", *at));
                       const S alpha = to_scalar<S>(Rational((l - 1) * *m));
                       ctx.result["laguerre"] = io::scalar_json(laguerre(*m, alpha, x));
                     }
                   });
                   std::vector<double> r = real_roots_exact(finite_poisson<Rational>(*m, l));
                   std::vector<Complex> zs(r.begin(), r.end());
                   ctx.csv = roots_csv(zs);
                   if (*support) {
                     const SupportReport s = mp_support_check(*m, l);
                     ctx.result["support"] = Json{{"zero_multiplicity", s.zero_multiplicity}, {"min_root", s.min_root},
                                                  {"max_root", s.max_root},                   {"lower", s.lower},
                                                  {"upper", s.upper},                         {"margin", s.margin}};
                   }
                 };
               }});
  v.push_back({{"dist compound", {"finite_compound_poisson"},
                {"dist", "compound", "--m", "2", "--lambda", "1", "--jumps", R"({"roots":[1,2]})"}},
               [](CLI::App& app) -> Action {
                 auto m = std::make_shared<int>(0);
                 auto lambda = std::make_shared<std::string>("1"), h = std::make_shared<std::string>();
                 app.add_option("--m", *m)->required()->check(CLI::Range(1, 200));
                 app.add_option("--lambda", *lambda);
                 app.add_option("--jumps", *h, "jump law as a degree-m polynomial or {\"roots\": [...]}")->required();
                 return [=](Context& ctx) {
                   const Rational l = rational_arg("--lambda", *lambda);
                   convert("--lambda", [&] { return lambda_times_m(*m, l); });
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Poly<S> hp = poly_arg<S>("--jumps", *h);
                     if (hp.degree() != *m) throw UsageError("--jumps", "degree must equal --m");
                     const Poly<S> r = compound_poisson_operator(*m, l, hp);
                     ctx.result = io::poly_json(r);
                     // cross-check through the per-jump factors when the jumps are given
                     const Json j = parse_json("--jumps", *h);
                     if (j.is_object() && j.contains("roots")) {
                       const Poly<S> viaroots = finite_compound_poisson(*m, l, io::multiset_from<S>(j.at("roots")));
                       ctx.ok = is_exact_v<S> ? viaroots == r : rel_coeff_diff(viaroots, r) <= 1e-9;
                       ctx.result["factor_form_agrees"] = ctx.ok;
                     }
                     ctx.csv = roots_csv(roots_of(r));
                   });
                 };
               }});

  // limit -------------------------------------------------------------------
  v.push_back({{"limit lln", {"lln_run"}, {"limit", "lln", "--ps", "[[1,0,-1],[1,-2,0]]", "--n", "16"}},
               [](CLI::App& app) -> Action {
                 auto ps = std::make_shared<std::string>();
                 auto n = std::make_shared<long>(0);
                 app.add_option("--ps", *ps, "array of polynomials of one degree")->required();
                 app.add_option("--n", *n)->required()->check(CLI::Range(1L, 100000L));
                 return [=](Context& ctx) {
                   with_mode(ctx, [&](auto tag) {
                     using S = decltype(tag);
                     const Json j = parse_json("--ps", *ps);
                     if (!j.is_array() || j.empty()) throw UsageError("--ps", "expected a non-empty array of polynomials");
                     std::vector<Poly<S>> polys;
                     for (const auto& x : j) polys.push_back(poly_arg<S>("--ps", x.dump()));
                     const LimitReport r = convert("--ps", [&] { return lln_run(polys, *n); });
                     ctx.result = Json{{"result", io::poly_json(lln_polynomial(polys, *n))}, {"distance", r.distance}};
                     ctx.csv = roots_csv(roots_of(r.result));
                   });
                 };
               }});
  v.push_back({{"limit clt", {"clt_run", "finite_gaussian"}, {"limit", "clt", "--p", "[1,0,-1,0]", "--n", "16"}},
               [](CLI::App& app) -> Action {
                 auto p = std::make_shared<std::string>();
                 auto n = std::make_shared<long>(0);
                 auto exact = std::make_shared<bool>(false);
                 app.add_option("--p", *p, "zero root sum")->required();
                 app.add_option("--n", *n)->required()->check(CLI::Range(1L, 100000L));
                 app.add_flag("--exact", *exact, "rational arithmetic; n must be a perfect square");
                 return [=](Context& ctx) {
                   if (*exact) {
                     const Poly<Rational> r =
                         convert("--n", [&] { return clt_polynomial_exact(poly_arg<Rational>("--p", *p), *n); });
                     ctx.result = Json{{"result", io::poly_json(r)}};
                     ctx.csv = roots_csv(roots_of(r));
                     return;
                   }
                   const LimitReport r = clt_run(to_double(poly_arg<Rational>("--p", *p)), *n);
                   ctx.result = Json{{"result", io::poly_json(r.result)}, {"distance", r.distance}};
                   ctx.csv = roots_csv(roots_of(r.result));
                 };
               }});
  v.push_back({{"limit poisson", {"poisson_limit_exact"}, {"limit", "poisson", "--m", "4", "--lambda", "1", "--exact"}},
               [](CLI::App& app) -> Action {
                 auto m = std::make_shared<int>(0);
                 auto lambda = std::make_shared<std::string>("1");
                 auto exact = std::make_shared<bool>(false);
                 app.add_option("--m", *m)->required()->check(CLI::Range(1, 200));
                 app.add_option("--lambda", *lambda);
                 app.add_flag("--exact", *exact, "compare coefficients exactly (otherwise in floating point)");
                 return [=](Context& ctx) {
                   const Rational l = rational_arg("--lambda", *lambda);
                   const long lm = convert("--lambda", [&] { return lambda_times_m(*m, l); });
                   if (*exact || ctx.mode == "rational") {
                     ctx.ok = poisson_limit_exact(*m, l);
                     ctx.result = Json{{"ok", ctx.ok}};
                     return;
                   }
                   const Poly<double> step = Poly<double>::monomial(*m) - Poly<double>::monomial(*m - 1);
                   const Poly<double> r = additive_power(step, lm, *m);
                   const double diff = rel_coeff_diff(r, finite_poisson<double>(*m, l));
                   ctx.ok = diff <= 1e-9;
                   ctx.result = Json{{"ok", ctx.ok}, {"residual", diff}};
                 };
               }});

  // ri ----------------------------------------------------------------------
  v.push_back({{"ri demo", {"restricted_invertibility_demo", "laguerre"}, {"ri", "demo", "--m", "3", "--n", "6", "--k", "2"}},
               [](CLI::App& app) -> Action {
                 auto v = std::make_shared<std::string>();
                 auto m = std::make_shared<int>(3), n = std::make_shared<int>(6), k = std::make_shared<int>(2);
                 app.add_option("--vectors", *v, "m x n matrix whose columns form a Parseval frame");
                 app.add_option("--m", *m)->check(CLI::Range(1, 64));
                 app.add_option("--n", *n)->check(CLI::Range(1, 4096));
                 app.add_option("--k", *k)->check(CLI::Range(1, 64));
                 return [=](Context& ctx) {
                   Matrix<double> frame;
                   if (!v->empty()) {
                     frame = matrix_arg<double>("--vectors", *v, false);
                   } else {
                     if (*n < *m) throw UsageError("--n", "need n >= m for a frame");
                     // rows of a Haar orthogonal matrix give a random Parseval frame
                     std::mt19937_64 rng(ctx.seed);
                     frame = haar_orthogonal(*n, rng).topRows(*m);
                   }
                   const RiReport r = convert("--k", [&] { return restricted_invertibility_demo(frame, *k); });
                   ctx.ok = r.deviation <= 1e-10 && r.kth_root >= r.bound;
                   ctx.result = Json{{"ok", ctx.ok},
                                     {"expected", io::poly_json(r.expected)},
                                     {"laguerre", io::poly_json(r.laguerre)},
                                     {"deviation", r.deviation},
                                     {"kth_root", r.kth_root},
                                     {"bound", r.bound}};
                   ctx.csv = roots_csv(roots_of(r.expected));
                 };
               }});
  return v;
}

const std::vector<Leaf>& leaves() {
  static const std::vector<Leaf> all = make_leaves();
  return all;
}

}  // namespace

const std::vector<Command>& registry() {
  static const std::vector<Command> cmds = [] {
    std::vector<Command> out;
    for (const Leaf& l : leaves()) out.push_back(l.info);
    return out;
  }();
  return cmds;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite free probability toolkit", "fft"};
  app.fallthrough();
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--mode", ctx.mode, "arithmetic: rational (exact) or float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--threads", ctx.threads, "Monte Carlo workers")->check(CLI::Range(1, 256));
  app.add_option("--seed", ctx.seed, "random seed")->envname("FFT_SEED");
  app.add_option("--out", ctx.out_path, "write the tabular result (CSV) to this file");

  std::map<std::string, CLI::App*> groups;
  std::vector<std::pair<CLI::App*, Action>> actions;
  for (const Leaf& leaf : leaves()) {
    const std::string& path = leaf.info.path;
    const auto space = path.find(' ');
    CLI::App* sub;
    if (space == std::string::npos) {
      sub = app.add_subcommand(path, describe(path));
    } else {
      const std::string group = path.substr(0, space);
      if (!groups.count(group)) {
        groups[group] = app.add_subcommand(group, describe(group));
        groups[group]->require_subcommand(1);
      }
      sub = groups[group]->add_subcommand(path.substr(space + 1), describe(path));
    }
    actions.emplace_back(sub, leaf.setup(*sub));
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    for (auto& [sub, action] : actions)
      if (sub->parsed()) action(ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ffp::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (!ctx.out_path.empty()) {
    if (ctx.csv.empty()) {
      err << "usage error: --out: this command has no tabular output\n";
      return 2;
    }
    std::ofstream f(ctx.out_path);
    if (!f) {
      err << "usage error: --out: cannot open " << ctx.out_path << '\n';
      return 2;
    }
    f << ctx.csv;
  }
  out << ctx.result.dump(2) << '\n';
  return ctx.ok ? 0 : 1;
}

}  // namespace ffp::cli
