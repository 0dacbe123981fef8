#include "varbv/mean_exponent.hpp"

#include "varbv/errors.hpp"

#include <algorithm>

namespace varbv {

Rational mean_exponent(const PrefixIntegral& integral, const Interval& q) {
    return Rational(1) / integral.mean_inverse(q);
}

Rational mean_exponent(const StepExponent& p, const Interval& q) {
    return mean_exponent(PrefixIntegral(p), q);
}

std::vector<Rational> attainable_exponents(const StepExponent& p, const Interval& q) {
    if (q.degenerate())
        throw DegenerateIntervalError("attainable exponents need a nondegenerate interval");
    if (!p.domain().contains(q))
        throw OutOfDomainError("interval escapes the exponent domain");
    std::vector<Rational> values;
    const std::size_t lo_piece = p.piece_right_of(q.lo);
    const std::size_t hi_piece = p.piece_left_of(q.hi);
    for (std::size_t i = lo_piece; i <= hi_piece; ++i) values.push_back(p.piece_values()[i]);
    for (const auto& o : p.overrides()) {
        if (q.contains(o.first)) values.push_back(o.second);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

namespace {

struct BestMean {
    Rational value = -1;
    Witness witness{0, 0, false};
    bool any = false;

    void offer(const Rational& v, const Witness& w) {
        if (!any || v > value) {
            value = v;
            witness = w;
            any = true;
            return;
        }
        if (v < value) return;
        // Ties: attained beats limit; then the wider interval wins.
        if (w.attained != witness.attained) {
            if (w.attained) witness = w;
            return;
        }
        if (w.hi - w.lo > witness.hi - witness.lo) witness = w;
    }
};

std::vector<Rational> candidate_points(const StepExponent& p, const Rational& lo,
                                       const Rational& hi, const Rational& x) {
    std::vector<Rational> pts;
    pts.push_back(lo);
    pts.push_back(hi);
    pts.push_back(x);
    for (const Rational& b : p.breakpoints()) {
        if (lo <= b && b <= hi) pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // Restrict the sorted set to [lo, hi] (x may coincide with an endpoint).
    std::vector<Rational> out;
    for (const Rational& t : pts) {
        if (lo <= t && t <= hi) out.push_back(t);
    }
    return out;
}

} // namespace

MaximalProfile maximal_profile(const StepExponent& p, const Rational& x) {
    const Interval dom = p.domain();
    if (!(dom.lo < x && x < dom.hi))
        throw OutOfDomainError("maximal profile needs an interior point");
    const PrefixIntegral integral(p);

    const std::vector<Rational> lefts = candidate_points(p, dom.lo, x, x);
    const std::vector<Rational> rights = candidate_points(p, x, dom.hi, x);

    BestMean left_best;
    for (const Rational& c : lefts) {
        if (c == x) continue;
        left_best.offer(integral.mean_inverse({c, x}), Witness{c, x, true});
    }
    left_best.offer(Rational(1) / p.piece_values()[p.piece_left_of(x)], Witness{x, x, false});

    BestMean right_best;
    for (const Rational& d : rights) {
        if (d == x) continue;
        right_best.offer(integral.mean_inverse({x, d}), Witness{x, d, true});
    }
    right_best.offer(Rational(1) / p.piece_values()[p.piece_right_of(x)], Witness{x, x, false});

    BestMean full_best;
    for (const Rational& c : lefts) {
        for (const Rational& d : rights) {
            if (c == d) continue;
            full_best.offer(integral.mean_inverse({c, d}), Witness{c, d, true});
        }
    }
    // Degenerate one-sided limits belong to the two-sided family too.
    full_best.offer(left_best.value, left_best.witness);
    full_best.offer(right_best.value, right_best.witness);

    return MaximalProfile{x,
                          full_best.value,
                          left_best.value,
                          right_best.value,
                          full_best.witness,
                          left_best.witness,
                          right_best.witness};
}

Rational p_minus(const StepExponent& p, const Rational& x, Side side) {
    const MaximalProfile prof = maximal_profile(p, x);
    switch (side) {
    case Side::Full: return Rational(1) / prof.m_full;
    case Side::Left: return Rational(1) / prof.m_left;
    case Side::Right:
    default: return Rational(1) / prof.m_right;
    }
}

AdditivityCondition additivity_condition(const StepExponent& p, const Rational& x) {
    const MaximalProfile prof = maximal_profile(p, x);
    AdditivityCondition cond;
    cond.full = Rational(1) / prof.m_full;
    cond.left = Rational(1) / prof.m_left;
    cond.right = Rational(1) / prof.m_right;
    cond.max_side = cond.left > cond.right ? Side::Left : Side::Right;
    const Rational max_one_sided = std::max(cond.left, cond.right);
    cond.holds = cond.full < max_one_sided;
    cond.gap = cond.holds ? max_one_sided - cond.full : Rational(0);
    return cond;
}

} // namespace varbv
