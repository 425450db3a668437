#include "ffp/io.hpp"

#include "ffp/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace ffp {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
    return num / den;
  }

  // [sign] digits [. digits] [e [sign] digits], read exactly
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  Integer mantissa = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (dot) --scale;
      digits = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw std::invalid_argument("not a number: '" + raw + "'");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw std::invalid_argument("not a number: '" + raw + "'");
    std::size_t used = 0;
    long exp = 0;
    try {
      exp = std::stol(text.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + raw + "'");
    }
    if (pos + 1 + used != text.size()) throw std::invalid_argument("not a number: '" + raw + "'");
    scale += exp;
  }
  Rational r(mantissa);
  r = r * ipow(Rational(10), scale);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace io {

Json scalar_json(const Rational& r) { return to_string(r); }
Json scalar_json(double d) { return d; }
Json scalar_json(const Complex& c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

template <>
Rational scalar_from<Rational>(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a number, got " + j.dump());
}

template <>
double scalar_from<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
  throw std::invalid_argument("expected a number, got " + j.dump());
}

template <>
Complex scalar_from<Complex>(const Json& j) {
  if (j.is_object()) return {scalar_from<double>(j.at("re")), scalar_from<double>(j.value("im", Json(0.0)))};
  return {scalar_from<double>(j), 0.0};
}

}  // namespace io
}  // namespace ffp
