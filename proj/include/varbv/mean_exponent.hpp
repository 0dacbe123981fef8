#pragma once

#include "varbv/interval.hpp"
#include "varbv/prefix_integral.hpp"
#include "varbv/step_exponent.hpp"

#include <vector>

namespace varbv {

// Harmonic-mean exponent over q: (mean of 1/p over q)^-1, exact. Overrides are
// measure zero and never contribute.
Rational mean_exponent(const StepExponent& p, const Interval& q);
Rational mean_exponent(const PrefixIntegral& integral, const Interval& q);

// Exponent values a tag inside closed q can reach: values of pieces overlapping q
// with positive length, plus override values at override points in q (endpoints
// included). Sorted, unique.
std::vector<Rational> attainable_exponents(const StepExponent& p, const Interval& q);

enum class Side { Full, Left, Right };

// Witness interval for a maximal value. attained = false marks the degenerate
// one-sided limit at x (interval shrunk onto x), reported as [x, x].
struct Witness {
    Rational lo;
    Rational hi;
    bool attained = true;
};

// Largest mean of 1/p over intervals containing x: the full two-sided family plus
// the families restricted to intervals ending (left) or starting (right) at x.
struct MaximalProfile {
    Rational x;
    Rational m_full;
    Rational m_left;
    Rational m_right;
    Witness w_full;
    Witness w_left;
    Witness w_right;
};

// Exact maximal values by candidate-endpoint enumeration: the mean is fractional-
// linear in each endpoint while it stays inside one piece, so extrema sit at piece
// boundaries, domain endpoints, x itself, or the degenerate limits at x.
// x must be interior to the domain.
MaximalProfile maximal_profile(const StepExponent& p, const Rational& x);

// Infimum of mean_exponent over closed intervals containing x within the chosen
// family; reciprocal of the matching maximal value.
Rational p_minus(const StepExponent& p, const Rational& x, Side side);

struct AdditivityCondition {
    bool holds = false;
    Rational gap;       // max(one-sided) - full, exact; 0 when the condition fails
    Side max_side = Side::Right;
    Rational full;
    Rational left;
    Rational right;
};

// Strict inequality p_minus(full) < max(p_minus(left), p_minus(right)) at x.
// Ties between sides resolve to Right, matching the construction that needs at
// most one reflection.
AdditivityCondition additivity_condition(const StepExponent& p, const Rational& x);

} // namespace varbv
