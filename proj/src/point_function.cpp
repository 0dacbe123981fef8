#include "varbv/point_function.hpp"

#include "varbv/errors.hpp"

#include <algorithm>

namespace varbv {

namespace {

void check_strictly_increasing(const std::vector<Rational>& pts, const char* what) {
    if (pts.size() < 2) throw DegenerateIntervalError(std::string(what) + ": need at least two points");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i - 1] < pts[i]))
            throw ParseError(std::string(what) + ": points must be strictly increasing");
    }
}

} // namespace

PointFunction PointFunction::step(std::vector<Rational> breakpoints,
                                  std::vector<double> piece_values,
                                  std::vector<double> breakpoint_values,
                                  bool zero_at_a) {
    check_strictly_increasing(breakpoints, "step function");
    if (piece_values.size() + 1 != breakpoints.size())
        throw ParseError("step function: need exactly one piece value per breakpoint gap");
    if (breakpoint_values.size() != breakpoints.size())
        throw ParseError("step function: need exactly one value per breakpoint");
    if (zero_at_a && breakpoint_values.front() != 0.0)
        throw ParseError("step function: flagged zero at the left endpoint but value is nonzero");
    PointFunction f;
    f.kind_ = Kind::Step;
    f.domain_ = {breakpoints.front(), breakpoints.back()};
    f.zero_at_a_ = zero_at_a;
    f.step_breakpoints_ = std::move(breakpoints);
    f.step_piece_values_ = std::move(piece_values);
    f.step_breakpoint_values_ = std::move(breakpoint_values);
    return f;
}

PointFunction PointFunction::zero(const Interval& domain) {
    if (domain.degenerate()) throw DegenerateIntervalError("zero function needs a nondegenerate domain");
    return step({domain.lo, domain.hi}, {0.0}, {0.0, 0.0}, true);
}

PointFunction PointFunction::spike(PointFunction base,
                                   std::vector<std::pair<Rational, double>> points,
                                   bool zero_at_a) {
    if (base.kind() != Kind::Step)
        throw ParseError("spike function: base must be a step function");
    std::sort(points.begin(), points.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!base.domain().contains(points[i].first))
            throw OutOfDomainError("spike point outside the base domain");
        if (i > 0 && points[i - 1].first == points[i].first)
            throw ParseError("duplicate spike point");
    }
    base.kind_ = Kind::Spike;
    base.spikes_ = std::move(points);
    base.zero_at_a_ = zero_at_a;
    if (zero_at_a && base.value_at(base.domain().lo) != 0.0)
        throw ParseError("spike function: flagged zero at the left endpoint but value is nonzero");
    return base;
}

PointFunction PointFunction::sampled(std::vector<Rational> points,
                                     std::vector<double> values,
                                     bool zero_at_a) {
    check_strictly_increasing(points, "sampled function");
    if (values.size() != points.size())
        throw ParseError("sampled function: need exactly one value per sample point");
    if (zero_at_a && values.front() != 0.0)
        throw ParseError("sampled function: flagged zero at the left endpoint but value is nonzero");
    PointFunction f;
    f.kind_ = Kind::Sampled;
    f.domain_ = {points.front(), points.back()};
    f.zero_at_a_ = zero_at_a;
    f.sample_points_ = std::move(points);
    f.sample_values_ = std::move(values);
    return f;
}

double PointFunction::value_at(const Rational& x) const {
    if (!domain_.contains(x)) throw OutOfDomainError("function evaluated outside domain");
    if (kind_ == Kind::Sampled) {
        auto it = std::lower_bound(sample_points_.begin(), sample_points_.end(), x);
        if (it == sample_points_.end() || *it != x)
            throw UnsampledPointError("function has no sample at the requested point");
        return sample_values_[static_cast<std::size_t>(it - sample_points_.begin())];
    }
    if (kind_ == Kind::Spike) {
        auto it = std::lower_bound(spikes_.begin(), spikes_.end(), x,
                                   [](const auto& s, const Rational& v) { return s.first < v; });
        if (it != spikes_.end() && it->first == x) return it->second;
    }
    auto it = std::lower_bound(step_breakpoints_.begin(), step_breakpoints_.end(), x);
    if (it != step_breakpoints_.end() && *it == x)
        return step_breakpoint_values_[static_cast<std::size_t>(it - step_breakpoints_.begin())];
    // Strictly between breakpoints: the covering open piece.
    auto idx = static_cast<std::size_t>(it - step_breakpoints_.begin());
    return step_piece_values_[idx - 1];
}

std::vector<Rational> PointFunction::anchor_points() const {
    if (kind_ == Kind::Sampled) return sample_points_;
    std::vector<Rational> pts = step_breakpoints_;
    for (const auto& s : spikes_) pts.push_back(s.first);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

bool PointFunction::operator==(const PointFunction& o) const {
    return kind_ == o.kind_ && domain_ == o.domain_ && zero_at_a_ == o.zero_at_a_ &&
           step_breakpoints_ == o.step_breakpoints_ &&
           step_piece_values_ == o.step_piece_values_ &&
           step_breakpoint_values_ == o.step_breakpoint_values_ && spikes_ == o.spikes_ &&
           sample_points_ == o.sample_points_ && sample_values_ == o.sample_values_;
}

PointFunction restrict_function(const PointFunction& f, const Interval& q) {
    if (q.degenerate()) throw DegenerateIntervalError("cannot restrict to a degenerate interval");
    if (!f.domain().contains(q)) throw OutOfDomainError("restriction interval escapes the domain");
    const bool zero_left = f.kind() != PointFunction::Kind::Sampled
                               ? f.value_at(q.lo) == 0.0
                               : false; // checked below once q.lo is known sampled
    if (f.kind() == PointFunction::Kind::Sampled) {
        std::vector<Rational> pts;
        std::vector<double> vals;
        bool saw_lo = false, saw_hi = false;
        for (std::size_t i = 0; i < f.sample_points().size(); ++i) {
            const Rational& x = f.sample_points()[i];
            if (!q.contains(x)) continue;
            saw_lo = saw_lo || x == q.lo;
            saw_hi = saw_hi || x == q.hi;
            pts.push_back(x);
            vals.push_back(f.sample_values()[i]);
        }
        if (!saw_lo || !saw_hi)
            throw UnsampledPointError("restriction endpoints must be sample points");
        const bool zl = vals.front() == 0.0;
        return PointFunction::sampled(std::move(pts), std::move(vals), zl);
    }
    std::vector<Rational> bps;
    std::vector<double> piece_vals;
    std::vector<double> bp_vals;
    bps.push_back(q.lo);
    for (const Rational& b : f.step_breakpoints()) {
        if (q.lo < b && b < q.hi) bps.push_back(b);
    }
    bps.push_back(q.hi);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        // Midpoint of the gap lies strictly inside one original piece.
        const Rational mid = (bps[i] + bps[i + 1]) / 2;
        auto it = std::upper_bound(f.step_breakpoints().begin(), f.step_breakpoints().end(), mid);
        piece_vals.push_back(
            f.step_piece_values()[static_cast<std::size_t>(it - f.step_breakpoints().begin()) - 1]);
    }
    for (const Rational& b : bps) {
        // Breakpoint values come from the base step, not from spikes.
        auto it = std::lower_bound(f.step_breakpoints().begin(), f.step_breakpoints().end(), b);
        if (it != f.step_breakpoints().end() && *it == b) {
            bp_vals.push_back(
                f.step_breakpoint_values()[static_cast<std::size_t>(it - f.step_breakpoints().begin())]);
        } else {
            auto jt = std::upper_bound(f.step_breakpoints().begin(), f.step_breakpoints().end(), b);
            bp_vals.push_back(
                f.step_piece_values()[static_cast<std::size_t>(jt - f.step_breakpoints().begin()) - 1]);
        }
    }
    PointFunction base = PointFunction::step(std::move(bps), std::move(piece_vals),
                                             std::move(bp_vals), false);
    if (f.kind() == PointFunction::Kind::Step) {
        return PointFunction::step(base.step_breakpoints(), base.step_piece_values(),
                                   base.step_breakpoint_values(), zero_left);
    }
    std::vector<std::pair<Rational, double>> spikes;
    for (const auto& s : f.spikes()) {
        if (q.contains(s.first)) spikes.push_back(s);
    }
    return PointFunction::spike(std::move(base), std::move(spikes), zero_left);
}

PointFunction scale_function(const PointFunction& f, double c) {
    auto scaled = [c](std::vector<double> v) {
        for (double& x : v) x *= c;
        return v;
    };
    switch (f.kind()) {
    case PointFunction::Kind::Step:
        return PointFunction::step(f.step_breakpoints(), scaled(f.step_piece_values()),
                                   scaled(f.step_breakpoint_values()), f.zero_at_a());
    case PointFunction::Kind::Spike: {
        PointFunction base =
            PointFunction::step(f.step_breakpoints(), scaled(f.step_piece_values()),
                                scaled(f.step_breakpoint_values()), false);
        std::vector<std::pair<Rational, double>> spikes = f.spikes();
        for (auto& s : spikes) s.second *= c;
        return PointFunction::spike(std::move(base), std::move(spikes), f.zero_at_a());
    }
    case PointFunction::Kind::Sampled:
    default:
        return PointFunction::sampled(f.sample_points(), scaled(f.sample_values()), f.zero_at_a());
    }
}

} // namespace varbv
