#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fairdiv {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Canonical text form: "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& q);

/// Accepts "a", "-a", "a/b"; throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational from_double(double value);

/// Nearest rational with denominator at most max_denominator.
Rational approximate(double value, long max_denominator);

Rational sum(const std::vector<Rational>& values);

Rational dot(const std::vector<Rational>& lhs, const std::vector<Rational>& rhs);

}  // namespace fairdiv
