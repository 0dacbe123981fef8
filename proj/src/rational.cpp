#include "varbv/rational.hpp"

#include "varbv/errors.hpp"

#include <cctype>

namespace varbv {

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    std::string num = s;
    std::string den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("not a rational literal: \"" + text + "\"");
    BigInt n(num);
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator: \"" + text + "\"");
    Rational r(n, d);
    return negative ? -r : r;
}

std::string format_rational(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

} // namespace varbv
