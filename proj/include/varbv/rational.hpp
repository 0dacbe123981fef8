#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace varbv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

// Accepts "num", "-num", "num/den"; rejects anything else (decimals included).
Rational parse_rational(const std::string& text);

// Canonical form: "num" when the denominator is 1, else "num/den".
std::string format_rational(const Rational& r);

} // namespace varbv
