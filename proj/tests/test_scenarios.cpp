#include "varbv/errors.hpp"
#include "varbv/scenarios.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

namespace {

using namespace varbv;

} // namespace

TEST_CASE("harmonic tail sums are exact rationals") {
    CHECK(harmonic_tail_sum(2) == Rational(1, 2));
    CHECK(harmonic_tail_sum(4) == Rational(13, 12));
    CHECK(harmonic_tail_sum(1) == 0);
    Rational acc = 0;
    for (int k = 2; k <= 50; ++k) acc += Rational(1, k);
    CHECK(harmonic_tail_sum(50) == acc);
}

TEST_CASE("divergence certificates are minimal") {
    CHECK(divergence_certificate(Rational(1)) == 4);    // 1/2 + 1/3 + 1/4 = 13/12 > 1
    CHECK(divergence_certificate(Rational(2, 5)) == 2); // first term already exceeds
    CHECK(divergence_certificate(Rational(4)) == 83);
    CHECK(harmonic_tail_sum(83) > 4);
    CHECK(harmonic_tail_sum(82) <= 4);
}

TEST_CASE("divergence certificate survives a threshold hit exactly") {
    // sum through k=4 equals 13/12 exactly; the certificate must keep going to 5
    CHECK(divergence_certificate(Rational(13, 12)) == 5);
}

TEST_CASE("divergence thresholds must be positive and reachable") {
    CHECK_THROWS_AS(divergence_certificate(Rational(0)), ParseError);
    CHECK_THROWS_AS(divergence_certificate(Rational(-1)), ParseError);
    CHECK_THROWS_AS(divergence_certificate(Rational(13)), ParseError);
}

TEST_CASE("anti-embedding construction carries overrides, spikes and disjoint intervals") {
    const AntiEmbedding ae = build_anti_embedding(10);
    CHECK(ae.exponent.overrides().size() == 10);
    CHECK(ae.function.spikes().size() == 10);
    CHECK(ae.exponent.value_at(Rational(1, 7)) == 2);
    CHECK(ae.exponent.value_at(Rational(1, 5) + Rational(1, 1000)) == 4);
    CHECK(ae.tagged_sum == harmonic_tail_sum(10));
    // proof intervals are pairwise disjoint and each holds its tag
    std::vector<TaggedInterval> sorted = ae.proof_intervals;
    std::sort(sorted.begin(), sorted.end(),
              [](const TaggedInterval& a, const TaggedInterval& b) { return a.q.lo < b.q.lo; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        CHECK(sorted[i].q.contains(sorted[i].tag));
        if (i + 1 < sorted.size()) CHECK(sorted[i].q.hi < sorted[i + 1].q.lo);
    }
    CHECK_THROWS_AS(build_anti_embedding(2), ParseError);
}

TEST_CASE("anti-embedding tagged sum is the harmonic series, term by term") {
    const AntiEmbedding ae = build_anti_embedding(6);
    Rational sum = 0;
    for (const TaggedInterval& ti : ae.proof_intervals) {
        const double height = ae.function.value_at(ti.tag);
        const Rational exponent = ae.exponent.value_at(ti.tag);
        CHECK(exponent == 2);
        // height is sqrt(tag) in binary64; its square recovers the tag up to rounding,
        // and the certified sum uses the exact tag instead
        CHECK(std::abs(height * height - to_double(ti.tag)) <= 1e-15);
        sum += ti.tag;
    }
    CHECK(sum == ae.tagged_sum);
}

TEST_CASE("unbounded-jump construction matches its closed form") {
    const UnboundedJump uj = build_unbounded_jump(2);
    CHECK(uj.exponent.breakpoints() ==
          std::vector<Rational>{Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)});
    CHECK(uj.exponent.piece_values() ==
          std::vector<Rational>{Rational(3), Rational(3), Rational(2)});
    CHECK(uj.expected_variation == Rational(5, 8));
    const VariationResult r = refine_variation(uj.exponent, uj.function);
    CHECK(r.lower_bound == 0.625);
    CHECK_THROWS_AS(build_unbounded_jump(1), ParseError);
}

TEST_CASE("unbounded-jump expected variation telescopes") {
    for (std::size_t n : {2u, 5u, 9u}) {
        const UnboundedJump uj = build_unbounded_jump(n);
        CHECK(uj.expected_variation == Rational(1) - Rational(3, BigInt(1) << (n + 1)));
        CHECK(uj.expected_variation < 1);
    }
}

TEST_CASE("cantor construction alternates remainder and gap pieces") {
    const CantorScenario c1 = build_cantor(1);
    CHECK(c1.exponent.breakpoints() ==
          std::vector<Rational>{Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)});
    CHECK(c1.exponent.piece_values() ==
          std::vector<Rational>{Rational(4), Rational(2), Rational(4)});
    CHECK(c1.function.value_at(Rational(0)) == 0.0);
    CHECK(c1.function.value_at(Rational(1, 3)) == 0.5);
    CHECK(c1.function.value_at(Rational(1, 2)) == 0.0);
    CHECK(c1.function.value_at(Rational(3, 4)) == 0.5);

    const CantorScenario c2 = build_cantor(2);
    CHECK(c2.gap_stages == std::vector<std::size_t>{2, 1, 2});
    CHECK(c2.exponent.piece_values()[0] == 6); // remainder pieces carry 2*(depth+1)
    CHECK(c2.exponent.value_at(Rational(1, 6)) == 4);  // stage-2 gap (1/9, 2/9)
    CHECK(c2.exponent.value_at(Rational(1, 2)) == 2);  // stage-1 gap
    CHECK_THROWS_AS(build_cantor(0), ParseError);
}

TEST_CASE("cantor variation stays under the cap and brute force agrees on the seed") {
    for (std::size_t depth : {1u, 2u, 3u}) {
        const CantorScenario cs = build_cantor(depth);
        const VariationResult r = refine_variation(cs.exponent, cs.function);
        CHECK(r.lower_bound <= 2.0);
        if (depth <= 2) {
            const Grid seed = initial_grid(cs.exponent, cs.function);
            CHECK(brute_force_variation(cs.exponent, cs.function, seed, Mode::Plain) ==
                  max_partition_dp(cs.exponent, cs.function, seed, Mode::Plain).lower_bound);
        }
    }
}

TEST_CASE("additivity failure on the reference exponent") {
    const StepExponent p({Rational(0), Rational(1, 2), Rational(1)},
                         {Rational(10), Rational(2)});
    const AdditivityFailure af = build_additivity_failure(p, Rational(1, 2), Rational(2));
    CHECK(af.reflected); // the 10|2 shape has its max side on the left
    CHECK(af.condition.holds);
    CHECK(af.condition.max_side == Side::Right);
    CHECK(af.condition.gap == 8);
    // K = 2 * max(1, 2^((1-8)/8)) = 2, so the jump height is 1/(K*C) = 1/4
    CHECK(af.k_factor == 2);
    CHECK(af.function.value_at(af.exponent.domain().hi) == 0.25);

    const Interval dom = af.exponent.domain();
    const double full = refine_variation(af.exponent, af.function).lower_bound;
    const double left = refine_variation(restrict_exponent(af.exponent, {dom.lo, af.split}),
                                         restrict_function(af.function, {dom.lo, af.split}))
                            .lower_bound;
    const double right = refine_variation(restrict_exponent(af.exponent, {af.split, dom.hi}),
                                          restrict_function(af.function, {af.split, dom.hi}))
                             .lower_bound;
    CHECK(left == 0.0);
    CHECK(right == doctest::Approx(std::pow(0.25, 10.0)).epsilon(1e-9));
    CHECK(full > 2.0 * (left + right));
}

TEST_CASE("additivity failure demands the condition and a sane factor") {
    CHECK_THROWS_AS(build_additivity_failure(
                        StepExponent({Rational(0), Rational(1)}, {Rational(4)}),
                        Rational(1, 2), Rational(1)),
                    ConditionNotSatisfiedError);
    const StepExponent p({Rational(0), Rational(1, 2), Rational(1)},
                         {Rational(10), Rational(2)});
    CHECK_THROWS_AS(build_additivity_failure(p, Rational(1, 2), Rational(1, 2)), ParseError);
}

TEST_CASE("superadditivity verification on hand-built cases") {
    const StepExponent p({Rational(0), Rational(1)}, {Rational(2)});
    const PointFunction z = PointFunction::zero({Rational(0), Rational(1)});
    const SuperadditivityReport zr = verify_superadditivity(p, z, Rational(1, 2));
    CHECK(zr.holds);
    CHECK(zr.full == 0);

    const PointFunction jump = PointFunction::step(
        {Rational(0), Rational(1, 2), Rational(1)}, {0.0, 1.0}, {0.0, 0.0, 1.0}, true);
    const SuperadditivityReport jr = verify_superadditivity(p, jump, Rational(1, 2));
    CHECK(jr.holds);
    CHECK(jr.left == 0);
    CHECK(jr.right == 1);
    CHECK(jr.full == 1);

    CHECK_THROWS_AS(verify_superadditivity(p, z, Rational(0)), OutOfDomainError);
}

TEST_CASE("every scenario passes at small parameters") {
    nlohmann::json params;
    params["n"] = 12;
    CHECK(run_scenario("anti-embedding", params).pass);
    CHECK(run_scenario("unbounded-jump", params).pass);
    nlohmann::json cparams;
    cparams["depth"] = 3;
    CHECK(run_scenario("cantor", cparams).pass);
    CHECK(run_scenario("additivity-failure").pass);
    nlohmann::json sparams;
    sparams["count"] = 5;
    CHECK(run_scenario("superadditivity", sparams).pass);
}

TEST_CASE("scenario reports aggregate their checks") {
    const ScenarioReport rep = run_scenario("unbounded-jump");
    CHECK(rep.pass);
    CHECK(!rep.checks.empty());
    CHECK(std::all_of(rep.checks.begin(), rep.checks.end(),
                      [](const Check& c) { return c.pass; }));
    CHECK(!rep.narrative.empty());
}

TEST_CASE("a starved grid cap makes the cantor crossing check fail honestly") {
    nlohmann::json params;
    params["depth"] = 1;
    const ScenarioReport rep = run_scenario("cantor", params, 8);
    CHECK_FALSE(rep.pass);
    bool found = false;
    for (const Check& c : rep.checks)
        if (c.name == "variation-crosses-widest-gap") {
            found = true;
            CHECK_FALSE(c.pass);
        }
    CHECK(found);
}

TEST_CASE("scenario ids are stable and unknown ids are rejected") {
    const std::vector<std::string> ids = scenario_ids();
    CHECK(ids == std::vector<std::string>{"anti-embedding", "unbounded-jump", "cantor",
                                          "additivity-failure", "superadditivity"});
    CHECK_THROWS_AS(run_scenario("nonsense"), ParseError);
    nlohmann::json bad;
    bad["n"] = 1;
    CHECK_THROWS_AS(run_scenario("anti-embedding", bad), ParseError);
    nlohmann::json decimal;
    decimal["m"] = 0.5;
    CHECK_THROWS_AS(run_scenario("anti-embedding", decimal), ParseError);
}
