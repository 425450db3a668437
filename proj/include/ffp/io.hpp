#pragma once

// JSON wire formats.
//   Poly:   {"mode": "rational"|"float", "coeffs": [leading .. constant]}
//   Series: {"order": k, "coeffs": [c_0 .. c_{k-1}]}
//   Complex: {"re": .., "im": ..}
//   Matrix: row-major array of rows
// Rationals travel as strings "num/den" (integers without the denominator).

#include "ffp/poly.hpp"
#include "ffp/series.hpp"

#include <json.hpp>

#include <string>

namespace ffp::io {

using Json = nlohmann::json;

Json scalar_json(const Rational& r);
Json scalar_json(double d);
Json scalar_json(const Complex& c);

/// A scalar given as a JSON number or a string ("3/4", "-2", "0.125").
template <typename Scalar>
Scalar scalar_from(const Json& j);
template <>
Rational scalar_from<Rational>(const Json& j);
template <>
double scalar_from<double>(const Json& j);
template <>
Complex scalar_from<Complex>(const Json& j);

template <typename Scalar>
const char* mode_name() {
  return is_exact_v<Scalar> ? "rational" : "float";
}

template <typename Scalar>
Json poly_json(const Poly<Scalar>& p) {
  Json coeffs = Json::array();
  for (const Scalar& c : p.leading_first()) coeffs.push_back(scalar_json(c));
  return Json{{"mode", mode_name<Scalar>()}, {"coeffs", coeffs}};
}

/// Accepts a bare leading-first array or the object form.
template <typename Scalar>
Poly<Scalar> poly_from(const Json& j) {
  const Json& arr = j.is_object() ? j.at("coeffs") : j;
  if (!arr.is_array() || arr.empty()) throw std::invalid_argument("polynomial must be a non-empty coefficient array");
  std::vector<Scalar> c;
  for (const auto& x : arr) c.push_back(scalar_from<Scalar>(x));
  return Poly<Scalar>::from_leading(c);
}

template <typename Scalar>
Json series_json(const TruncatedSeries<Scalar>& s) {
  Json coeffs = Json::array();
  for (int i = 0; i < s.order(); ++i) coeffs.push_back(scalar_json(s[i]));
  return Json{{"order", s.order()}, {"coeffs", coeffs}};
}

template <typename Scalar>
Json multiset_json(const Multiset<Scalar>& s) {
  Json out = Json::array();
  for (const auto& x : s.elements()) out.push_back(scalar_json(x));
  return out;
}

template <typename Scalar>
Multiset<Scalar> multiset_from(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("multiset must be an array");
  std::vector<Scalar> xs;
  for (const auto& x : j) xs.push_back(scalar_from<Scalar>(x));
  return Multiset<Scalar>(std::move(xs));
}

template <typename Scalar>
Json matrix_json(const Matrix<Scalar>& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(scalar_json(Scalar(a(i, k))));
    rows.push_back(row);
  }
  return rows;
}

template <typename Scalar>
Matrix<Scalar> matrix_from(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix<Scalar> a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) throw std::invalid_argument("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) a(i, k) = scalar_from<Scalar>(j[i][k]);
  }
  return a;
}

template <typename Scalar>
Json vector_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

}  // namespace ffp::io
