#pragma once

#include "varbv/interval.hpp"
#include "varbv/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace varbv {

// Piecewise-constant exponent p on [a,b] with finitely many point overrides.
// Pieces are left-closed right-open; the last piece is closed at b. Overrides
// change pointwise evaluation only; they never enter integral means.
class StepExponent {
public:
    // breakpoints: b_0 = a < ... < b_P = b; piece_values: value on piece i = [b_{i-1}, b_i).
    // All piece and override values must be >= 1; override points must lie in [a,b].
    StepExponent(std::vector<Rational> breakpoints,
                 std::vector<Rational> piece_values,
                 std::vector<std::pair<Rational, Rational>> overrides = {});

    const Interval& domain() const { return domain_; }
    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& piece_values() const { return piece_values_; }
    // Sorted by point, unique points.
    const std::vector<std::pair<Rational, Rational>>& overrides() const { return overrides_; }
    std::size_t piece_count() const { return piece_values_.size(); }

    // Pointwise evaluation honoring overrides; throws OutOfDomainError.
    Rational value_at(const Rational& x) const;

    // Piece index (0-based) covering x under the tiling convention; x must be in domain.
    std::size_t piece_index(const Rational& x) const;
    // Piece covering (x, x+eps); requires x < b.
    std::size_t piece_right_of(const Rational& x) const;
    // Piece covering (x-eps, x); requires x > a.
    std::size_t piece_left_of(const Rational& x) const;

    bool operator==(const StepExponent& o) const;

private:
    Interval domain_;
    std::vector<Rational> breakpoints_;
    std::vector<Rational> piece_values_;
    std::vector<std::pair<Rational, Rational>> overrides_;
};

inline Rational eval_exponent(const StepExponent& p, const Rational& x) { return p.value_at(x); }

// Restriction to a subinterval [q.lo, q.hi] of the domain; overrides outside are dropped.
StepExponent restrict_exponent(const StepExponent& p, const Interval& q);

// Reflection about the domain midpoint: result(t) = p(a + b - t) up to the
// measure-zero piece-edge convention; overrides are mapped pointwise.
StepExponent reflect_exponent(const StepExponent& p);

} // namespace varbv
