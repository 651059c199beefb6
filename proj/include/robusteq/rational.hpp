#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace robusteq {

/// Exact rational number. Always kept in canonical form: positive
/// denominator, gcd(|num|, den) = 1 (guaranteed by the backend).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "num/den" or plain integer text ("3", "-5/2", " 1/3 ").
/// Throws FormatError on anything else, including zero denominators.
Rational parse_rational(const std::string& text);

/// Canonical text form: "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rational& value);

std::string format_rational_vector(const std::vector<Rational>& values);

}  // namespace robusteq
