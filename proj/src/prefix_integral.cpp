#include "varbv/prefix_integral.hpp"

#include "varbv/errors.hpp"

#include <algorithm>

namespace varbv {

PrefixIntegral::PrefixIntegral(const StepExponent& p) : p_(p) {
    cumulative_.reserve(p_.breakpoints().size());
    Rational acc = 0;
    cumulative_.push_back(acc);
    for (std::size_t i = 0; i + 1 < p_.breakpoints().size(); ++i) {
        acc += (p_.breakpoints()[i + 1] - p_.breakpoints()[i]) / p_.piece_values()[i];
        cumulative_.push_back(acc);
    }
}

Rational PrefixIntegral::at(const Rational& x) const {
    if (!p_.domain().contains(x))
        throw OutOfDomainError("prefix integral evaluated outside domain");
    const auto& bps = p_.breakpoints();
    auto it = std::upper_bound(bps.begin(), bps.end(), x);
    auto idx = static_cast<std::size_t>(it - bps.begin());
    if (idx >= bps.size()) return cumulative_.back();
    // x in [b_{idx-1}, b_idx): accumulated up to b_{idx-1} plus the partial piece.
    return cumulative_[idx - 1] + (x - bps[idx - 1]) / p_.piece_values()[idx - 1];
}

Rational PrefixIntegral::mean_inverse(const Interval& q) const {
    if (q.degenerate())
        throw DegenerateIntervalError("mean over a degenerate interval is undefined");
    if (!p_.domain().contains(q))
        throw OutOfDomainError("mean interval escapes the domain");
    return (at(q.hi) - at(q.lo)) / q.length();
}

} // namespace varbv
