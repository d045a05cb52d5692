#include "fairdiv/rational.hpp"

#include <cmath>
#include <regex>

#include "fairdiv/error.hpp"

namespace fairdiv {

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*(-?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
  std::match_results<std::string_view::const_iterator> match;
  if (!std::regex_match(text.begin(), text.end(), match, pattern)) {
    throw Error(ErrorCode::ParseError, "not a rational literal: '" + std::string(text) + "'");
  }
  Integer num(match[1].str());
  Integer den(1);
  if (match[2].matched) den = Integer(match[2].str());
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational out(scaled);
  exponent -= 53;
  if (exponent >= 0) {
    out *= Rational(Integer(1) << exponent);
  } else {
    out /= Rational(Integer(1) << -exponent);
  }
  return out;
}

Rational approximate(double value, long max_denominator) {
  // Continued-fraction best approximation.
  const Rational target = from_double(value);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = target;
  for (int step = 0; step < 64; ++step) {
    Integer a = boost::multiprecision::numerator(rest) / boost::multiprecision::denominator(rest);
    if (rest < 0 && a * boost::multiprecision::denominator(rest) != boost::multiprecision::numerator(rest)) a -= 1;
    const Integer p2 = a * p1 + p0;
    const Integer q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  if (q1 == 0) return Rational(p0, q0);
  return Rational(p1, q1);
}

Rational sum(const std::vector<Rational>& values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

Rational dot(const std::vector<Rational>& lhs, const std::vector<Rational>& rhs) {
  if (lhs.size() != rhs.size()) throw Error(ErrorCode::DimensionMismatch, "dot: length mismatch");
  Rational total = 0;
  for (std::size_t k = 0; k < lhs.size(); ++k) total += lhs[k] * rhs[k];
  return total;
}

}  // namespace fairdiv
