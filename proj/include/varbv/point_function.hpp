#pragma once

#include "varbv/interval.hpp"
#include "varbv/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace varbv {

// Test function f on [a,b] in one of three shapes:
//   Step:    piecewise-constant with an explicit value at every breakpoint
//            (jump conventions are data, not convention);
//   Spike:   a Step baseline overridden at finitely many points;
//   Sampled: values known only at a fixed point set containing a and b.
// Breakpoints, spike points and sample points are exact rationals; values are binary64.
class PointFunction {
public:
    enum class Kind { Step, Spike, Sampled };

    static PointFunction step(std::vector<Rational> breakpoints,
                              std::vector<double> piece_values,
                              std::vector<double> breakpoint_values,
                              bool zero_at_a = false);
    static PointFunction zero(const Interval& domain);
    // base must be Step kind; spike points must lie in its domain.
    static PointFunction spike(PointFunction base,
                               std::vector<std::pair<Rational, double>> points,
                               bool zero_at_a = false);
    static PointFunction sampled(std::vector<Rational> points,
                                 std::vector<double> values,
                                 bool zero_at_a = false);

    Kind kind() const { return kind_; }
    const Interval& domain() const { return domain_; }
    bool zero_at_a() const { return zero_at_a_; }

    // Throws OutOfDomainError; UnsampledPointError for off-sample x of Sampled kind.
    double value_at(const Rational& x) const;

    // Step/base accessors (Step and Spike kinds).
    const std::vector<Rational>& step_breakpoints() const { return step_breakpoints_; }
    const std::vector<double>& step_piece_values() const { return step_piece_values_; }
    const std::vector<double>& step_breakpoint_values() const { return step_breakpoint_values_; }
    // Spike accessors; sorted by point, unique.
    const std::vector<std::pair<Rational, double>>& spikes() const { return spikes_; }
    // Sampled accessors.
    const std::vector<Rational>& sample_points() const { return sample_points_; }
    const std::vector<double>& sample_values() const { return sample_values_; }

    // Every structurally meaningful point: step breakpoints, spike points or sample
    // points. Seeds DP grids; sorted, unique.
    std::vector<Rational> anchor_points() const;

    bool operator==(const PointFunction& o) const;

private:
    PointFunction() = default;

    Kind kind_ = Kind::Step;
    Interval domain_;
    bool zero_at_a_ = false;
    std::vector<Rational> step_breakpoints_;
    std::vector<double> step_piece_values_;
    std::vector<double> step_breakpoint_values_;
    std::vector<std::pair<Rational, double>> spikes_;
    std::vector<Rational> sample_points_;
    std::vector<double> sample_values_;
};

inline double eval_function(const PointFunction& f, const Rational& x) { return f.value_at(x); }

// Restriction to [q.lo, q.hi]; endpoint values are taken from evaluation there.
// Sampled functions require q's endpoints to be sample points.
PointFunction restrict_function(const PointFunction& f, const Interval& q);

// Same shape with every value multiplied by c.
PointFunction scale_function(const PointFunction& f, double c);

} // namespace varbv
