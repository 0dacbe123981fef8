#include "varbv/errors.hpp"
#include "varbv/mean_exponent.hpp"
#include "varbv/norm.hpp"
#include "varbv/point_function.hpp"
#include "varbv/prefix_integral.hpp"
#include "varbv/scenarios.hpp"
#include "varbv/step_exponent.hpp"
#include "varbv/variation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace varbv;

namespace {

int failures = 0;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(const std::string& name, bool pass, double secs, const std::string& detail) {
    std::printf("[%s] %-44s %6.2fs  %s\n", pass ? "PASS" : "FAIL", name.c_str(), secs,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::mt19937_64 engine;
std::size_t pick(std::size_t n) { return engine() % n; }

// Sorted distinct interior multiples of 1/denom, plus both domain endpoints.
std::vector<Rational> random_grid(std::size_t interior, std::size_t denom) {
    std::set<Rational> pts{Rational(0), Rational(1)};
    while (pts.size() < interior + 2) pts.insert(Rational(1 + pick(denom - 1), denom));
    return {pts.begin(), pts.end()};
}

StepExponent random_exponent(std::size_t max_pieces, std::size_t denom, bool with_overrides) {
    const std::size_t pieces = 1 + pick(max_pieces);
    std::vector<Rational> bps = random_grid(pieces - 1, denom);
    std::vector<Rational> vals;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) vals.push_back(Rational(4 + pick(21), 4));
    std::vector<std::pair<Rational, Rational>> overrides;
    if (with_overrides) {
        std::set<Rational> at;
        for (std::size_t i = pick(3); i > 0; --i) at.insert(Rational(pick(denom + 1), denom));
        for (const Rational& x : at) overrides.emplace_back(x, Rational(4 + pick(21), 4));
    }
    return StepExponent(std::move(bps), std::move(vals), std::move(overrides));
}

PointFunction random_step(std::size_t max_pieces, std::size_t denom) {
    const std::size_t pieces = 1 + pick(max_pieces);
    std::vector<Rational> bps = random_grid(pieces - 1, denom);
    std::vector<double> pv, bv;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i)
        pv.push_back(static_cast<double>(pick(9)) / 8.0);
    for (std::size_t i = 0; i < bps.size(); ++i)
        bv.push_back(static_cast<double>(pick(9)) / 8.0);
    return PointFunction::step(std::move(bps), std::move(pv), std::move(bv));
}

PointFunction random_spikes(std::size_t denom) {
    std::set<Rational> at;
    const std::size_t want = 1 + pick(3);
    while (at.size() < want) at.insert(Rational(1 + pick(denom), denom));
    std::vector<std::pair<Rational, double>> pts;
    for (const Rational& x : at)
        pts.emplace_back(x, static_cast<double>(1 + pick(8)) / 8.0);
    return PointFunction::spike(PointFunction::zero({Rational(0), Rational(1)}), std::move(pts),
                                true);
}

// --- certified partition search equals exhaustive enumeration -------------------

void dp_matches_brute_force() {
    Stopwatch sw;
    engine.seed(1001);
    const std::size_t instances = 500;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const StepExponent p = random_exponent(4, 16, i % 2 == 0);
        const PointFunction f = i % 3 == 0 ? random_spikes(16) : random_step(4, 16);
        const Grid g(random_grid(2 + pick(9), 16));
        for (const Mode mode : {Mode::Plain, Mode::Tagged}) {
            const double dp = max_partition_dp(p, f, g, mode).lower_bound;
            const double brute = brute_force_variation(p, f, g, mode);
            if (dp != brute) ++bad;
        }
    }
    const double secs = sw.seconds();
    report("partition-search-equals-enumeration", bad == 0 && secs < 60.0, secs,
           std::to_string(instances) + " instances, both modes, " + std::to_string(bad) +
               " mismatches");
}

// --- harmonic spike family: tagged sums grow, plain variation stays bounded -----

void harmonic_spike_family() {
    Stopwatch sw;
    bool ok = true;
    std::string detail;

    const AntiEmbedding ae = build_anti_embedding(100);
    Rational series = 0;
    for (int k = 2; k <= 100; ++k) series += Rational(1, k);
    ok = ok && ae.tagged_sum == series;
    ok = ok && std::abs(to_double(series) - 4.187377517639621) < 1e-12;

    // minimal certificates, re-proved by direct accumulation on both sides
    const std::pair<Rational, std::size_t> certs[] = {
        {Rational(1), 4}, {Rational(2, 5), 2}, {Rational(4), 83}};
    for (const auto& [m, n] : certs) {
        ok = ok && divergence_certificate(m) == n;
        ok = ok && harmonic_tail_sum(n) > m;
        ok = ok && !(harmonic_tail_sum(n - 1) > m);
    }

    const double plain = refine_variation(ae.exponent, ae.function).lower_bound;
    const double cap = 3.2898681336964528; // pi^2/3
    ok = ok && plain < cap;
    detail = "plain variation " + std::to_string(plain) + " < " + std::to_string(cap) +
             ", tagged sum exact at n=100";

    ok = ok && run_scenario("anti-embedding", {{"n", 100}}).pass;
    report("harmonic-spike-family", ok, sw.seconds(), detail);
}

// --- equal jumps with growing exponents keep the variation under 2 --------------

void bounded_jump_accumulation() {
    Stopwatch sw;
    bool ok = true;
    double prev = 0.0;
    std::string detail = "variations";
    for (const std::size_t n : {std::size_t(2), std::size_t(10), std::size_t(50)}) {
        const UnboundedJump uj = build_unbounded_jump(n);
        const double v = refine_variation(uj.exponent, uj.function).lower_bound;
        ok = ok && v <= uj.variation_bound;
        ok = ok && v >= prev;
        ok = ok && v == to_double(uj.expected_variation);
        prev = v;
        detail += " " + std::to_string(v);
    }
    const double secs = sw.seconds();
    report("bounded-jump-accumulation", ok && secs < 10.0, secs, detail + " (bound 2)");
}

// --- middle-thirds construction stays under 2 at every depth --------------------

void middle_thirds_bounded() {
    Stopwatch sw;
    bool ok = true;
    double deepest = 0.0;
    for (std::size_t depth = 1; depth <= 6; ++depth) {
        const CantorScenario cs = build_cantor(depth);
        const double v = refine_variation(cs.exponent, cs.function).lower_bound;
        ok = ok && v <= cs.variation_bound && v >= 0.4;
        deepest = v;
    }
    const double secs = sw.seconds();
    report("middle-thirds-bounded", ok && secs < 30.0, secs,
           "depths 1..6, deepest " + std::to_string(deepest) + " <= 2");
}

// --- splitting never beats the whole interval, exactly --------------------------

void splitting_superadditive() {
    Stopwatch sw;
    engine.seed(5005);
    RefineOptions opts;
    opts.max_points = 192;
    const std::size_t instances = 200;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const StepExponent p = random_exponent(4, 16, false);
        const PointFunction f = random_step(4, 16);
        for (int reps = 0; reps < 3; ++reps) {
            const Rational c(1 + pick(15), 16);
            if (!verify_superadditivity(p, f, c, opts).holds) ++violations;
        }
    }
    report("splitting-superadditive", violations == 0, sw.seconds(),
           std::to_string(instances) + " instances x 3 split points, " +
               std::to_string(violations) + " violations (exact arithmetic)");
}

// --- constructed splitting failures have positive margin ------------------------

void splitting_failure_margin() {
    Stopwatch sw;
    bool ok = true;
    std::string detail = "margins";
    const StepExponent p({Rational(0), Rational(1, 2), Rational(1)},
                         {Rational(10), Rational(2)});
    for (const int c : {1, 2, 10}) {
        const AdditivityFailure af = build_additivity_failure(p, Rational(1, 2), Rational(c));
        const Interval dom = af.exponent.domain();
        const double full = refine_variation(af.exponent, af.function).lower_bound;
        const double left =
            refine_variation(restrict_exponent(af.exponent, {dom.lo, af.split}),
                             restrict_function(af.function, {dom.lo, af.split}))
                .lower_bound;
        const double right =
            refine_variation(restrict_exponent(af.exponent, {af.split, dom.hi}),
                             restrict_function(af.function, {af.split, dom.hi}))
                .lower_bound;
        const double margin = full - c * (left + right);
        ok = ok && margin > 0.0;
        detail += " " + std::to_string(margin);
    }
    bool rejected = false;
    try {
        build_additivity_failure(StepExponent({Rational(0), Rational(1)}, {Rational(4)}),
                                 Rational(1, 2), Rational(2));
    } catch (const ConditionNotSatisfiedError&) {
        rejected = true;
    }
    ok = ok && rejected;
    report("splitting-failure-margin", ok, sw.seconds(),
           detail + ", constant exponent rejected");
}

// --- maximal means agree with a dense interval scan ------------------------------

void maximal_matches_dense_scan() {
    Stopwatch sw;
    engine.seed(7007);
    const std::size_t instances = 100;
    std::size_t bad = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const StepExponent p = random_exponent(5, 32, false);
        const Rational x(1 + pick(31), 32);
        const MaximalProfile mp = maximal_profile(p, x);
        const PrefixIntegral integral(p);

        std::set<Rational> scan{p.breakpoints().begin(), p.breakpoints().end()};
        scan.insert(x);
        for (std::size_t k = 0; k <= 256; ++k) scan.insert(Rational(k, 256));
        const std::vector<Rational> pts(scan.begin(), scan.end());

        Rational best_full = 0, best_left = 0, best_right = 0;
        for (const Rational& u : pts) {
            if (u > x) break;
            for (const Rational& v : pts) {
                if (v < x || v <= u) continue;
                const Rational m = integral.mean_inverse({u, v});
                ++pairs;
                if (m > best_full) best_full = m;
                if (v == x && m > best_left) best_left = m;
                if (u == x && m > best_right) best_right = m;
            }
        }

        const auto agrees = [](const Rational& scanned, const Rational& reported,
                               const Witness& w) {
            return w.attained ? scanned == reported : scanned <= reported;
        };
        if (!agrees(best_full, mp.m_full, mp.w_full)) ++bad;
        if (!agrees(best_left, mp.m_left, mp.w_left)) ++bad;
        if (!agrees(best_right, mp.m_right, mp.w_right)) ++bad;
        if (mp.m_full < mp.m_left || mp.m_full < mp.m_right) ++bad;
        // the minimal mean exponent is the reciprocal of the maximal mean of 1/p
        if (p_minus(p, x, Side::Full) != Rational(1) / mp.m_full) ++bad;
        if (p_minus(p, x, Side::Left) != Rational(1) / mp.m_left) ++bad;
        if (p_minus(p, x, Side::Right) != Rational(1) / mp.m_right) ++bad;
    }
    report("maximal-matches-dense-scan", bad == 0, sw.seconds(),
           std::to_string(instances) + " exponents, " + std::to_string(pairs / instances) +
               " interval pairs each, exact agreement");
}

// --- norm calculus: jump norms, homogeneity, ordered-exponent comparison ---------

void norm_calculus() {
    Stopwatch sw;
    bool ok = true;
    const double tol = 1e-8;

    for (const double h : {0.25, 1.0, 3.5}) {
        const StepExponent p({Rational(0), Rational(1)}, {Rational(2)});
        const PointFunction f = PointFunction::step(
            {Rational(0), Rational(1, 2), Rational(1)}, {0.0, h}, {0.0, 0.0, h}, true);
        const NormResult n = luxemburg_norm(p, f, tol);
        ok = ok && std::abs(n.norm - h) <= 2.0 * tol * std::max(1.0, h);
    }

    const StepExponent p2({Rational(0), Rational(1, 2), Rational(1)},
                          {Rational(4), Rational(2)});
    const PointFunction base = PointFunction::step(
        {Rational(0), Rational(1, 2), Rational(1)}, {0.0, 0.5}, {0.0, 0.0, 0.5}, true);
    const double unit = luxemburg_norm(p2, base, tol).norm;
    for (const double c : {0.5, 2.0, 10.0}) {
        const double scaled = luxemburg_norm(p2, scale_function(base, c), tol).norm;
        ok = ok && std::abs(scaled - c * unit) <= 2.0 * tol * std::max(1.0, c);
    }

    engine.seed(8008);
    RefineOptions opts;
    opts.max_points = 256;
    const std::size_t pairs = 100;
    std::size_t unordered = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
        std::vector<Rational> bps = random_grid(1 + pick(3), 8);
        std::vector<Rational> v1, v2;
        for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
            v1.push_back(Rational(4 + pick(13), 4));
            v2.push_back(v1.back() + Rational(pick(9), 4));
        }
        const StepExponent lo(bps, v1);
        const StepExponent hi(bps, v2);
        const Rational cut(1 + pick(31), 32);
        const double h = static_cast<double>(1 + pick(8)) / 16.0;
        std::set<Rational> fb{Rational(0), cut, Rational(1)};
        std::vector<Rational> fbps(fb.begin(), fb.end());
        std::vector<double> pv(fbps.size() - 1, h);
        pv.front() = 0.0;
        std::vector<double> bv(fbps.size(), h);
        bv.front() = 0.0;
        if (fbps.size() == 3) bv[1] = 0.0;
        const PointFunction f = PointFunction::step(fbps, pv, bv, true);
        if (!embedding_compare(lo, hi, f, tol, opts).ordered) ++unordered;
    }
    ok = ok && unordered == 0;
    report("norm-calculus", ok, sw.seconds(),
           "jump norms, homogeneity x3, " + std::to_string(pairs) +
               " ordered pairs, " + std::to_string(unordered) + " order violations");
}

// --- the running variation x -> V(a,x) never decreases ---------------------------

void running_variation_monotone() {
    Stopwatch sw;
    engine.seed(9009);
    RefineOptions opts;
    opts.max_points = 256;
    const std::size_t instances = 100;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        const StepExponent p = random_exponent(4, 16, i % 2 == 0);
        const PointFunction f = random_step(4, 16);
        std::set<Rational> qs{Rational(1)};
        while (qs.size() < 10) qs.insert(Rational(1 + pick(32), 32));
        const std::vector<Rational> xs(qs.begin(), qs.end());
        const std::vector<double> vals = variation_function(p, f, xs, opts);
        for (std::size_t k = 0; k + 1 < vals.size(); ++k)
            if (vals[k] > vals[k + 1]) ++bad;
    }
    report("running-variation-monotone", bad == 0, sw.seconds(),
           std::to_string(instances) + " instances x 10 query points, " +
               std::to_string(bad) + " decreases");
}

} // namespace

int main() {
    dp_matches_brute_force();
    harmonic_spike_family();
    bounded_jump_accumulation();
    middle_thirds_bounded();
    splitting_superadditive();
    splitting_failure_margin();
    maximal_matches_dense_scan();
    norm_calculus();
    running_variation_monotone();
    if (failures > 0) {
        std::printf("%d acceptance criteria failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
