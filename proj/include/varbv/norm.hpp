#pragma once

#include "varbv/point_function.hpp"
#include "varbv/step_exponent.hpp"
#include "varbv/variation.hpp"

#include <cstddef>

namespace varbv {

struct NormResult {
    double norm = 0.0;        // certified upper end of the bracket
    double bracket_lo = 0.0;  // modular(f / bracket_lo) > 1 (or 0 for a constant function)
    double bracket_hi = 0.0;  // modular(f / bracket_hi) <= 1
    double modular_at_norm = 0.0;
    std::size_t evaluations = 0; // modular evaluations spent bracketing + bisecting
    std::size_t grid_size = 0;
    std::size_t rounds = 0;      // refinement rounds behind the frozen grid
    bool converged = true;
};

// Variation of f / lambda on a fixed grid (DP over weights with scale 1/lambda).
// lambda must be positive.
double modular_at_scale(const StepExponent& p, const PointFunction& f, const Grid& g,
                        double lambda);

// Luxemburg-style norm: inf { lambda > 0 : variation of f/lambda <= 1 }, evaluated
// on the grid refined once at lambda = 1 and then frozen. Doubling/halving brackets
// the threshold, bisection shrinks the bracket to tol (absolute); the reported norm
// is the certified upper end.
NormResult luxemburg_norm(const StepExponent& p, const PointFunction& f,
                          double tol = 1e-8, const RefineOptions& opts = {});

struct EmbeddingComparison {
    NormResult lhs;  // norm under p1 (the smaller exponent)
    NormResult rhs;  // norm under p2
    bool ordered = false; // rhs.norm <= lhs.norm + tol on the shared grid
};

// Requires p1 <= p2 pointwise on every piece of the merged breakpoint set
// (NotPointwiseOrderedError otherwise). Both norms are computed on one shared grid,
// the union of each exponent's own refinement grid, which makes the termwise weight
// domination argument apply grid-for-grid.
EmbeddingComparison embedding_compare(const StepExponent& p1, const StepExponent& p2,
                                      const PointFunction& f, double tol = 1e-8,
                                      const RefineOptions& opts = {});

} // namespace varbv
