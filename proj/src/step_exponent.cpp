#include "varbv/step_exponent.hpp"

#include "varbv/errors.hpp"

#include <algorithm>

namespace varbv {

StepExponent::StepExponent(std::vector<Rational> breakpoints,
                           std::vector<Rational> piece_values,
                           std::vector<std::pair<Rational, Rational>> overrides)
    : breakpoints_(std::move(breakpoints)),
      piece_values_(std::move(piece_values)),
      overrides_(std::move(overrides)) {
    if (breakpoints_.size() < 2)
        throw DegenerateIntervalError("exponent needs at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw ParseError("breakpoints must be strictly increasing");
    }
    if (piece_values_.size() + 1 != breakpoints_.size())
        throw ParseError("need exactly one piece value per breakpoint gap");
    for (const Rational& v : piece_values_) {
        if (v < 1) throw ParseError("exponent values must be >= 1");
    }
    domain_ = {breakpoints_.front(), breakpoints_.back()};
    std::sort(overrides_.begin(), overrides_.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 0; i < overrides_.size(); ++i) {
        const auto& [x, v] = overrides_[i];
        if (!domain_.contains(x)) throw OutOfDomainError("override point outside domain");
        if (v < 1) throw ParseError("exponent values must be >= 1");
        if (i > 0 && overrides_[i - 1].first == x)
            throw ParseError("duplicate override point");
    }
}

Rational StepExponent::value_at(const Rational& x) const {
    if (!domain_.contains(x)) throw OutOfDomainError("exponent evaluated outside domain");
    auto it = std::lower_bound(overrides_.begin(), overrides_.end(), x,
                               [](const auto& o, const Rational& v) { return o.first < v; });
    if (it != overrides_.end() && it->first == x) return it->second;
    return piece_values_[piece_index(x)];
}

std::size_t StepExponent::piece_index(const Rational& x) const {
    if (!domain_.contains(x)) throw OutOfDomainError("exponent evaluated outside domain");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    // x == b falls past the end; the closed last piece owns it.
    if (idx >= breakpoints_.size()) return piece_values_.size() - 1;
    return idx - 1;
}

std::size_t StepExponent::piece_right_of(const Rational& x) const {
    if (!(x < domain_.hi)) throw OutOfDomainError("no piece to the right of the domain end");
    return piece_index(x);
}

std::size_t StepExponent::piece_left_of(const Rational& x) const {
    if (!(x > domain_.lo)) throw OutOfDomainError("no piece to the left of the domain start");
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it != breakpoints_.end() && *it == x)
        return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return piece_index(x);
}

bool StepExponent::operator==(const StepExponent& o) const {
    return breakpoints_ == o.breakpoints_ && piece_values_ == o.piece_values_ &&
           overrides_ == o.overrides_;
}

StepExponent restrict_exponent(const StepExponent& p, const Interval& q) {
    if (q.degenerate()) throw DegenerateIntervalError("cannot restrict to a degenerate interval");
    if (!p.domain().contains(q)) throw OutOfDomainError("restriction interval escapes the domain");
    std::vector<Rational> bps;
    std::vector<Rational> vals;
    bps.push_back(q.lo);
    for (const Rational& b : p.breakpoints()) {
        if (q.lo < b && b < q.hi) bps.push_back(b);
    }
    bps.push_back(q.hi);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i)
        vals.push_back(p.piece_values()[p.piece_right_of(bps[i])]);
    std::vector<std::pair<Rational, Rational>> ovs;
    for (const auto& o : p.overrides()) {
        if (q.contains(o.first)) ovs.push_back(o);
    }
    return StepExponent(std::move(bps), std::move(vals), std::move(ovs));
}

StepExponent reflect_exponent(const StepExponent& p) {
    const Rational edge_sum = p.domain().lo + p.domain().hi;
    std::vector<Rational> bps(p.breakpoints().rbegin(), p.breakpoints().rend());
    for (Rational& b : bps) b = edge_sum - b;
    std::vector<Rational> vals(p.piece_values().rbegin(), p.piece_values().rend());
    std::vector<std::pair<Rational, Rational>> ovs;
    for (const auto& o : p.overrides()) ovs.emplace_back(edge_sum - o.first, o.second);
    return StepExponent(std::move(bps), std::move(vals), std::move(ovs));
}

} // namespace varbv
