#pragma once

#include "varbv/rational.hpp"

namespace varbv {

// Closed interval [lo, hi]. Degenerate (lo == hi) instances are allowed as data;
// operations that need positive length check and throw DegenerateIntervalError.
struct Interval {
    Rational lo;
    Rational hi;

    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& q) const { return lo <= q.lo && q.hi <= hi; }
    bool degenerate() const { return lo >= hi; }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

} // namespace varbv
