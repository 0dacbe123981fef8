#include "varbv/variation.hpp"

#include "varbv/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace varbv {

namespace {

// Error term of the rounded difference s = fl(a - b) (Knuth two-sum, difference form).
inline double two_diff_err(double a, double b, double s) {
    const double bb = s - a;
    return (a - (s - bb)) - (b + bb);
}

// a - b where both carry (hi, lo) splits of exact values; returns the double
// nearest the exact difference up to ~2^-106 of the inputs' magnitude, which keeps
// cancellation between nearby prefix values harmless.
template <typename Dd>
inline double dd_diff(const Dd& a, const Dd& b) {
    const double s = a.hi - b.hi;
    const double e = two_diff_err(a.hi, b.hi, s);
    return s + (e + (a.lo - b.lo));
}

} // namespace

void GridWeightTable::RangeMinMax::build(const std::vector<double>& vals) {
    mins.clear();
    maxs.clear();
    if (vals.empty()) return;
    mins.push_back(vals);
    maxs.push_back(vals);
    for (std::size_t len = 2; len <= vals.size(); len *= 2) {
        const auto& pm = mins.back();
        const auto& px = maxs.back();
        const std::size_t count = vals.size() - len + 1;
        std::vector<double> lvl_min(count), lvl_max(count);
        for (std::size_t i = 0; i < count; ++i) {
            lvl_min[i] = std::min(pm[i], pm[i + len / 2]);
            lvl_max[i] = std::max(px[i], px[i + len / 2]);
        }
        mins.push_back(std::move(lvl_min));
        maxs.push_back(std::move(lvl_max));
    }
}

double GridWeightTable::RangeMinMax::min(std::size_t i, std::size_t j) const {
    const auto k = static_cast<std::size_t>(std::bit_width(j - i + 1)) - 1;
    return std::min(mins[k][i], mins[k][j + 1 - (std::size_t(1) << k)]);
}

double GridWeightTable::RangeMinMax::max(std::size_t i, std::size_t j) const {
    const auto k = static_cast<std::size_t>(std::bit_width(j - i + 1)) - 1;
    return std::max(maxs[k][i], maxs[k][j + 1 - (std::size_t(1) << k)]);
}

GridWeightTable::GridWeightTable(const StepExponent& p, const PointFunction& f,
                                 const std::vector<Rational>& grid_points) {
    if (grid_points.size() < 2)
        throw GridTooSmallError("weight table needs at least two grid points");
    const std::size_t n = grid_points.size();
    const PrefixIntegral integral(p);

    auto split = [](const Rational& r) {
        Dd d;
        d.hi = to_double(r);
        if (!std::isfinite(d.hi)) throw Error("value overflows binary64");
        d.lo = to_double(r - Rational(d.hi));
        return d;
    };

    value_.reserve(n);
    integral_.reserve(n);
    coordinate_.reserve(n);
    piece_right_.assign(n, 0);
    piece_left_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& x = grid_points[i];
        if (i > 0 && !(grid_points[i - 1] < x))
            throw ParseError("grid points must be strictly increasing");
        value_.push_back(f.value_at(x));
        integral_.push_back(split(integral.at(x)));
        coordinate_.push_back(split(x));
        if (i + 1 < n) piece_right_[i] = p.piece_right_of(x);
        if (i > 0) piece_left_[i] = p.piece_left_of(x);
    }

    std::vector<double> piece_vals;
    piece_vals.reserve(p.piece_count());
    for (const Rational& v : p.piece_values()) piece_vals.push_back(to_double(v));
    piece_range_.build(piece_vals);

    const auto& ovs = p.overrides();
    override_values_.reserve(ovs.size());
    for (const auto& o : ovs) override_values_.push_back(to_double(o.second));
    override_range_.build(override_values_);
    override_ge_.assign(n, 0);
    override_le_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Rational& x = grid_points[i];
        const auto lo = std::lower_bound(ovs.begin(), ovs.end(), x,
                                         [](const auto& o, const Rational& v) { return o.first < v; });
        const auto hi = std::upper_bound(ovs.begin(), ovs.end(), x,
                                         [](const Rational& v, const auto& o) { return v < o.first; });
        override_ge_[i] = static_cast<std::size_t>(lo - ovs.begin());
        override_le_[i] = static_cast<std::size_t>(hi - ovs.begin());
    }
}

double GridWeightTable::increment(std::size_t i, std::size_t j) const {
    return std::abs(value_[j] - value_[i]);
}

double GridWeightTable::mean_exponent_d(std::size_t i, std::size_t j) const {
    const double den = dd_diff(coordinate_[j], coordinate_[i]);
    const double num = dd_diff(integral_[j], integral_[i]);
    const double e = den / num;
    // The exact mean lies between the extreme piece values touched; clamping removes
    // the last-ulp drift and pins single-piece intervals to the piece value.
    const double lo = piece_range_.min(piece_right_[i], piece_left_[j]);
    const double hi = piece_range_.max(piece_right_[i], piece_left_[j]);
    return std::min(std::max(e, lo), hi);
}

double GridWeightTable::tagged_exponent_d(std::size_t i, std::size_t j, double delta) const {
    double lo = piece_range_.min(piece_right_[i], piece_left_[j]);
    double hi = piece_range_.max(piece_right_[i], piece_left_[j]);
    if (!override_values_.empty()) {
        const std::size_t oi = override_ge_[i];
        const std::size_t oj = override_le_[j];
        if (oi < oj) {
            lo = std::min(lo, override_range_.min(oi, oj - 1));
            hi = std::max(hi, override_range_.max(oi, oj - 1));
        }
    }
    return delta < 1.0 ? lo : delta > 1.0 ? hi : lo; // at exactly 1 any choice has weight 1
}

double GridWeightTable::weight(std::size_t i, std::size_t j, Mode mode, double scale) const {
    const double d = increment(i, j) * scale;
    if (d == 0.0) return 0.0;
    if (d == 1.0) return 1.0;
    const double e = mode == Mode::Tagged ? tagged_exponent_d(i, j, d) : mean_exponent_d(i, j);
    return powered(d, e);
}

double GridWeightTable::powered(double delta, double exponent) {
    if (delta == 0.0) return 0.0;
    if (delta == 1.0) return 1.0;
    // Below the smallest subnormal the true value is indistinguishable from 0.
    if (exponent * std::log(delta) < -745.0) return 0.0;
    return std::pow(delta, exponent);
}

double partition_modular(const StepExponent& p, const PointFunction& f, const Partition& P) {
    const GridWeightTable table(p, f, P.points);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < P.points.size(); ++k)
        acc += table.weight(k, k + 1, Mode::Plain);
    return acc;
}

double tagged_partition_modular(const StepExponent& p, const PointFunction& f,
                                const TaggedPartition& tp) {
    double acc = 0.0;
    for (std::size_t k = 0; k < tp.tags.size(); ++k) {
        const Interval q = tp.partition.interval(k);
        const double delta = std::abs(f.value_at(q.hi) - f.value_at(q.lo));
        acc += GridWeightTable::powered(delta, to_double(p.value_at(tp.tags[k])));
    }
    return acc;
}

namespace {

struct DpSweep {
    std::vector<double> best;
    std::vector<std::size_t> back;
};

// best[j] = max over i < j of best[i] + w(i, j); ties go to the largest i so the
// reconstructed partition is deterministic. The left-to-right accumulation means
// best[j] along any chain equals the plain running sum of that chain's weights.
DpSweep dp_sweep(const GridWeightTable& t, Mode mode, double scale = 1.0) {
    const std::size_t n = t.size();
    DpSweep s;
    s.best.assign(n, 0.0);
    s.back.assign(n, 0);
    for (std::size_t j = 1; j < n; ++j) {
        double bj = -std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        for (std::size_t i = 0; i < j; ++i) {
            const double cand = s.best[i] + t.weight(i, j, mode, scale);
            if (cand >= bj) {
                bj = cand;
                bi = i;
            }
        }
        s.best[j] = bj;
        s.back[j] = bi;
    }
    return s;
}

std::vector<Rational> chain_points(const Grid& g, const std::vector<std::size_t>& back) {
    std::vector<std::size_t> idx;
    for (std::size_t j = g.size() - 1; j != 0; j = back[j]) idx.push_back(j);
    idx.push_back(0);
    std::vector<Rational> pts;
    pts.reserve(idx.size());
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) pts.push_back(g.points[*it]);
    return pts;
}

VariationResult result_from_sweep(const Grid& g, const DpSweep& s, std::size_t rounds,
                                  bool converged, double last_increment) {
    return VariationResult{s.best.back(),    Partition(chain_points(g, s.back)),
                           g.size(),         rounds,
                           converged,        last_increment};
}

} // namespace

VariationResult max_partition_dp(const StepExponent& p, const PointFunction& f,
                                 const Grid& g, Mode mode) {
    const GridWeightTable table(p, f, g.points);
    const DpSweep s = dp_sweep(table, mode);
    return result_from_sweep(g, s, 0, true, 0.0);
}

namespace {

// Every nonnegative double is an integer multiple of 2^-1126 (smallest subnormal
// times 2^-52), so sums of weights are exact integers at that scale.
constexpr int kDyadicShift = 1126;

BigInt dyadic_scaled(double w) {
    if (w == 0.0) return BigInt(0);
    int e = 0;
    const double m = std::frexp(w, &e);
    const auto m53 = static_cast<long long>(std::ldexp(m, 53));
    return BigInt(m53) << (e - 53 + kDyadicShift);
}

} // namespace

ExactVariation exact_grid_variation(const StepExponent& p, const PointFunction& f,
                                    const Grid& g, Mode mode) {
    const GridWeightTable table(p, f, g.points);
    const std::size_t n = g.size();
    std::vector<BigInt> best(n);
    std::vector<std::size_t> back(n, 0);
    for (std::size_t j = 1; j < n; ++j) {
        BigInt bj;
        std::size_t bi = 0;
        bool first = true;
        for (std::size_t i = 0; i < j; ++i) {
            BigInt cand = best[i] + dyadic_scaled(table.weight(i, j, mode));
            if (first || cand >= bj) {
                bj = std::move(cand);
                bi = i;
                first = false;
            }
        }
        best[j] = std::move(bj);
        back[j] = bi;
    }
    Rational value(best[n - 1], BigInt(1) << kDyadicShift);
    return ExactVariation{std::move(value), Partition(chain_points(g, back))};
}

double brute_force_variation(const StepExponent& p, const PointFunction& f,
                             const Grid& g, Mode mode) {
    const std::size_t n = g.size();
    if (n > 22) throw GridTooLargeError("brute force is capped at 22 grid points");
    const GridWeightTable table(p, f, g.points);
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) w[i][j] = table.weight(i, j, mode);
    const std::size_t interior = n - 2;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (std::size_t(1) << interior); ++mask) {
        double acc = 0.0;
        std::size_t prev = 0;
        for (std::size_t k = 0; k < interior; ++k) {
            if (mask & (std::size_t(1) << k)) {
                acc += w[prev][k + 1];
                prev = k + 1;
            }
        }
        acc += w[prev][n - 1];
        best = std::max(best, acc);
    }
    return best;
}

Grid initial_grid(const StepExponent& p, const PointFunction& f,
                  const std::vector<Rational>& extra_points) {
    if (!(p.domain() == f.domain()))
        throw OutOfDomainError("exponent and function live on different domains");
    std::vector<Rational> pts = f.anchor_points();
    pts.push_back(p.domain().lo);
    pts.push_back(p.domain().hi);
    for (const Rational& b : p.breakpoints()) pts.push_back(b);
    for (const auto& o : p.overrides()) pts.push_back(o.first);
    for (const Rational& x : extra_points) {
        if (!p.domain().contains(x)) throw OutOfDomainError("extra grid point outside domain");
        pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return Grid(std::move(pts), 0);
}

namespace {

std::vector<Rational> refined_points(const std::vector<Rational>& pts, const Rational& eps,
                                     const Interval& dom) {
    std::vector<Rational> out = pts;
    out.reserve(pts.size() * 4);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back((pts[i] + pts[i + 1]) / 2);
    for (const Rational& x : pts) {
        if (x - eps > dom.lo) out.push_back(x - eps);
        if (x + eps < dom.hi) out.push_back(x + eps);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

RefinedVariation refine_variation_with_grid(const StepExponent& p, const PointFunction& f,
                                            const RefineOptions& opts, Mode mode) {
    if (f.kind() == PointFunction::Kind::Sampled) {
        // The sample set is the only legal grid; extra points must be samples.
        std::vector<Rational> pts = f.sample_points();
        pts.insert(pts.end(), opts.extra_points.begin(), opts.extra_points.end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        Grid g(std::move(pts), 0);
        VariationResult res = max_partition_dp(p, f, g, mode);
        return RefinedVariation{std::move(res), std::move(g)};
    }

    Grid g = initial_grid(p, f, opts.extra_points);
    if (g.size() > opts.max_points)
        throw GridTooLargeError("refinement cap is below the seed grid size");
    const Interval dom = p.domain();
    GridWeightTable table(p, f, g.points);
    DpSweep sweep = dp_sweep(table, mode);
    double best = sweep.best.back();

    std::size_t rounds = 0;
    bool converged = false;
    double last_increment = 0.0;
    int small_streak = 0;
    while (true) {
        if (small_streak >= 2) {
            converged = true;
            break;
        }
        const Rational eps = dom.length() / Rational(BigInt(1) << (6 + rounds + 1));
        std::vector<Rational> next = refined_points(g.points, eps, dom);
        if (next.size() > opts.max_points) break; // converged stays false
        g = Grid(std::move(next), g.generation + 1);
        table = GridWeightTable(p, f, g.points);
        sweep = dp_sweep(table, mode);
        const double nb = sweep.best.back();
        last_increment = nb - best; // >= 0: a finer grid keeps every earlier chain
        best = nb;
        ++rounds;
        const bool small = last_increment <= opts.tol * std::max(1.0, std::abs(nb));
        small_streak = small ? small_streak + 1 : 0;
    }
    VariationResult res = result_from_sweep(g, sweep, rounds, converged, last_increment);
    return RefinedVariation{std::move(res), std::move(g)};
}

VariationResult refine_variation(const StepExponent& p, const PointFunction& f,
                                 const RefineOptions& opts, Mode mode) {
    return refine_variation_with_grid(p, f, opts, mode).result;
}

std::vector<double> variation_function(const StepExponent& p, const PointFunction& f,
                                       const std::vector<Rational>& xs,
                                       const RefineOptions& opts) {
    const Interval dom = f.domain();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!dom.contains(xs[i])) throw OutOfDomainError("query point outside domain");
        if (i > 0 && xs[i] < xs[i - 1]) throw ParseError("query points must be sorted");
    }
    RefineOptions o = opts;
    o.extra_points.insert(o.extra_points.end(), xs.begin(), xs.end());
    const RefinedVariation rv = refine_variation_with_grid(p, f, o, Mode::Plain);
    const GridWeightTable table(p, f, rv.grid.points);
    const DpSweep sweep = dp_sweep(table, Mode::Plain);
    // best[m] is the best chain ending at point m, i.e. the variation over [a, g_m];
    // one sweep answers every prefix query, and best is nondecreasing exactly because
    // each point may extend its predecessor's chain with a nonnegative weight.
    std::vector<double> out;
    out.reserve(xs.size());
    for (const Rational& x : xs) {
        const auto it = std::lower_bound(rv.grid.points.begin(), rv.grid.points.end(), x);
        out.push_back(sweep.best[static_cast<std::size_t>(it - rv.grid.points.begin())]);
    }
    return out;
}

} // namespace varbv
