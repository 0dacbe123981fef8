#pragma once

#include "varbv/mean_exponent.hpp"
#include "varbv/norm.hpp"
#include "varbv/point_function.hpp"
#include "varbv/step_exponent.hpp"
#include "varbv/variation.hpp"

#include "json.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace varbv {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail; // numbers behind the verdict, human-readable
};

struct ScenarioReport {
    std::string id;
    nlohmann::json parameters;
    nlohmann::json values;  // computed quantities worth reporting
    std::vector<Check> checks;
    bool pass = false;      // all checks pass
    std::string narrative;  // one paragraph: what was built and what was confirmed
};

// An interval with a designated tag point inside it; the tagged sums below run
// over disjoint families of these, which lower-bound any spanning tagged partition
// since all other terms are nonnegative.
struct TaggedInterval {
    Interval q;
    Rational tag;
};

// Spike family on [0,1] whose tagged variation grows like the harmonic series while
// the plain variation stays bounded: exponent 4 everywhere with pointwise overrides
// 2 at x = 1/k, spikes of height sqrt(1/k) at those points. Each proof interval
// [1/k, midpoint(1/k, 1/(k-1))] tagged at 1/k contributes (sqrt(1/k))^2 = 1/k.
struct AntiEmbedding {
    StepExponent exponent;
    PointFunction function;
    std::vector<TaggedInterval> proof_intervals; // k = n..2, disjoint
    Rational tagged_sum;  // exact sum_{k=2}^n 1/k, valid because every tag exponent is 2
    double plain_bound;   // pi^2/3, cap for the plain variation
};
AntiEmbedding build_anti_embedding(std::size_t n); // n >= 3

// Exact partial sums sum_{k=2}^n 1/k.
Rational harmonic_tail_sum(std::size_t n);

// Smallest N with sum_{k=2}^N 1/k > m, by exact accumulation. m > 0;
// capped at N <= 200000 (m ~ 12.2), larger demands are an input error.
std::size_t divergence_certificate(const Rational& m);

// Step exponent 1+n on (1/(n+1), 1/n] (leftover [0, 1/(N+1)] keeps 1+N) with jumps
// of fixed height 1/2 at every 1/n: infinitely many same-size jumps, variation <= 2
// because the exponents grow toward the accumulation point.
struct UnboundedJump {
    StepExponent exponent;
    PointFunction function;
    double variation_bound; // 2
    Rational expected_variation; // 1 - 3*2^-(n+1): every spike isolated at piece exponents
};
UnboundedJump build_unbounded_jump(std::size_t n); // truncation depth, n >= 2

// Middle-thirds construction: exponent 2n on the gaps removed at stage n and
// 2(depth+1) on the remaining closed pieces (the next stage's value, so crossing
// weights stay dominated by the deepest gap crossed); f = 1/2 on the remaining
// pieces with f(0) = 0, 0 on the gaps.
struct CantorScenario {
    StepExponent exponent;
    PointFunction function;
    std::vector<std::size_t> gap_stages; // stage of each gap piece, in piece order
    double variation_bound;              // 2
};
CantorScenario build_cantor(std::size_t depth); // depth >= 1

// Where the additivity condition holds at x with gap A, a single jump of height
// 1/(K*C) placed at x has its whole-interval variation strictly above C times the
// sum of the two split variations, K = 2*max(1, C^((1-A)/A)). Built on the
// reflected exponent when the condition's max side is the left one.
struct AdditivityFailure {
    StepExponent exponent;  // reflected when needed so the max side is the right one
    PointFunction function;
    Rational split;         // x in the (possibly reflected) coordinates
    Rational k_factor;
    bool reflected = false;
    AdditivityCondition condition; // evaluated on the stored exponent at split
};
AdditivityFailure build_additivity_failure(const StepExponent& p, const Rational& x,
                                           const Rational& c); // c >= 1

// Exact check that splitting at c never beats the whole interval:
// V(a,c) + V(c,b) <= V(a,b) on a shared refinement grid containing c, with all
// three sums accumulated exactly.
struct SuperadditivityReport {
    Rational left, right, full;
    bool holds = false; // left + right <= full, exact
};
SuperadditivityReport verify_superadditivity(const StepExponent& p, const PointFunction& f,
                                             const Rational& c,
                                             const RefineOptions& opts = {});

// Named end-to-end verifications for the CLI; ids listed by scenario_ids().
// Recognized parameters (all optional): n, depth, c, m, count, seed.
// max_points caps every refinement grid the scenario builds.
std::vector<std::string> scenario_ids();
ScenarioReport run_scenario(const std::string& id, const nlohmann::json& params = {},
                            std::size_t max_points = RefineOptions{}.max_points);

} // namespace varbv
