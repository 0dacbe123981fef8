#pragma once

#include "varbv/partition.hpp"
#include "varbv/point_function.hpp"
#include "varbv/prefix_integral.hpp"
#include "varbv/step_exponent.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace varbv {

enum class Mode { Plain, Tagged };

struct RefineOptions {
    double tol = 1e-9;          // relative per-round improvement threshold
    std::size_t max_points = 4096;
    std::vector<Rational> extra_points; // forced into the seed grid
};

struct VariationResult {
    double lower_bound = 0.0;
    Partition best_partition;
    std::size_t grid_size = 0;
    std::size_t rounds = 0;
    bool converged = true;
    double last_increment = 0.0;
};

// Per-grid weight oracle shared by the DP, the brute-force oracle and modular
// recomputation, so all of them see bit-identical weights.
//
// Mean exponents use exact prefix integrals carried per grid point as double-double
// (hi + lo) splits of the exact rationals; pair differences then cost a few flops
// instead of big-rational arithmetic, with relative error ~1e-15 dominated by the
// final roundings, not by cancellation.
class GridWeightTable {
public:
    GridWeightTable(const StepExponent& p, const PointFunction& f,
                    const std::vector<Rational>& grid_points);

    std::size_t size() const { return value_.size(); }
    double value_at(std::size_t i) const { return value_[i]; }

    // |f(g_j) - f(g_i)|, i < j.
    double increment(std::size_t i, std::size_t j) const;
    // Harmonic-mean exponent of [g_i, g_j] in binary64.
    double mean_exponent_d(std::size_t i, std::size_t j) const;
    // Tag-optimal exponent: min attainable value when delta < 1, max when delta >= 1.
    double tagged_exponent_d(std::size_t i, std::size_t j, double delta) const;

    // |delta * scale| ^ exponent with the hard-underflow cutoff (exp * ln < -745 -> 0).
    double weight(std::size_t i, std::size_t j, Mode mode, double scale = 1.0) const;
    // Variant with the plain exponent supplied by the caller (for cached-exponent loops).
    static double powered(double delta, double exponent);

private:
    struct Dd {
        double hi = 0.0;
        double lo = 0.0;
    };

    // Range min/max over a static array in O(1) (sparse table).
    struct RangeMinMax {
        std::vector<std::vector<double>> mins;
        std::vector<std::vector<double>> maxs;
        void build(const std::vector<double>& vals);
        double min(std::size_t i, std::size_t j) const; // inclusive, i <= j
        double max(std::size_t i, std::size_t j) const;
    };

    std::vector<double> value_;         // f at grid points
    std::vector<Dd> integral_;          // I(g_i), exact rational split hi+lo
    std::vector<Dd> coordinate_;        // g_i itself, split hi+lo
    std::vector<std::size_t> piece_right_; // piece covering (g_i, g_i+eps); last entry unused
    std::vector<std::size_t> piece_left_;  // piece covering (g_i-eps, g_i); first entry unused
    RangeMinMax piece_range_;
    std::vector<double> override_values_;
    RangeMinMax override_range_;
    std::vector<std::size_t> override_ge_; // first override index with point >= g_i
    std::vector<std::size_t> override_le_; // one past last override index with point <= g_i
};

// Sum over consecutive intervals of |f(t_k) - f(t_{k-1})| ^ p_bar(Q_k), binary64,
// accumulated left to right. P must span the common domain of p and f.
double partition_modular(const StepExponent& p, const PointFunction& f, const Partition& P);

// Same with the exponent evaluated pointwise at each tag.
double tagged_partition_modular(const StepExponent& p, const PointFunction& f,
                                const TaggedPartition& tp);

// Max-weight interval partition over grid points:
//   best[j] = max_{i<j} best[i] + w(g_i, g_j),
// ties resolved to the largest predecessor i; optimal chain reconstructed from
// backpointers. Grid needs at least two points.
VariationResult max_partition_dp(const StepExponent& p, const PointFunction& f,
                                 const Grid& g, Mode mode);

// Same DP with exact accumulation: weights are the table's binary64 values but sums
// are exact rationals, so value comparisons across split/whole grids are exact.
struct ExactVariation {
    Rational value;
    Partition best_partition;
};
ExactVariation exact_grid_variation(const StepExponent& p, const PointFunction& f,
                                    const Grid& g, Mode mode);

// Exhaustive maximum over all subsets of interior grid points; the testing oracle.
// Grid capped at 22 points.
double brute_force_variation(const StepExponent& p, const PointFunction& f,
                             const Grid& g, Mode mode);

// Seed grid for refinement: function anchors, exponent breakpoints, override
// points, domain endpoints, extra points; sorted unique.
Grid initial_grid(const StepExponent& p, const PointFunction& f,
                  const std::vector<Rational>& extra_points = {});

// Certified lower bound by iterated refinement. Each round inserts interval
// midpoints and eps-offsets (b-a) * 2^-(6+round) around every point, then reruns
// the DP. Stops converged after two consecutive rounds improve by < tol relative,
// or unconverged when the next grid would exceed max_points. Sampled functions are
// their own maximal grid and take no rounds.
VariationResult refine_variation(const StepExponent& p, const PointFunction& f,
                                 const RefineOptions& opts = {}, Mode mode = Mode::Plain);

// refine_variation plus the final grid, for callers that keep computing on it.
struct RefinedVariation {
    VariationResult result;
    Grid grid;
};
RefinedVariation refine_variation_with_grid(const StepExponent& p, const PointFunction& f,
                                            const RefineOptions& opts = {},
                                            Mode mode = Mode::Plain);

// F(x) = variation of f over [a,x] for each query point, computed on one shared
// refinement grid (queries included) so grids nest and monotonicity is exact.
// xs must be sorted and inside the domain.
std::vector<double> variation_function(const StepExponent& p, const PointFunction& f,
                                       const std::vector<Rational>& xs,
                                       const RefineOptions& opts = {});

} // namespace varbv
