#pragma once

#include "varbv/interval.hpp"
#include "varbv/step_exponent.hpp"

#include <vector>

namespace varbv {

// Exact cumulative integral I(x) = int_a^x 1/p(t) dt for a step exponent.
// I(a) = 0 and I is strictly increasing since p >= 1 everywhere.
class PrefixIntegral {
public:
    explicit PrefixIntegral(const StepExponent& p);

    const StepExponent& exponent() const { return p_; }
    // Cumulative values at the exponent breakpoints, same indexing.
    const std::vector<Rational>& at_breakpoints() const { return cumulative_; }

    // I(x); x must lie in the domain.
    Rational at(const Rational& x) const;

    // (I(hi) - I(lo)) / (hi - lo), the mean of 1/p over q. q nondegenerate, inside domain.
    Rational mean_inverse(const Interval& q) const;

private:
    StepExponent p_;
    std::vector<Rational> cumulative_;
};

} // namespace varbv
