#include "varbv/norm.hpp"

#include "varbv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varbv {

namespace {

// The weights already maximize over chains, so the modular of f/lambda on a fixed
// grid is the DP value with every increment scaled by 1/lambda.
double grid_modular(const GridWeightTable& table, double lambda) {
    const std::size_t n = table.size();
    const double scale = 1.0 / lambda;
    std::vector<double> best(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        double bj = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < j; ++i)
            bj = std::max(bj, best[i] + table.weight(i, j, Mode::Plain, scale));
        best[j] = bj;
    }
    return best.back();
}

NormResult norm_on_table(const GridWeightTable& table, double tol, std::size_t grid_size,
                         std::size_t rounds, bool converged) {
    NormResult r;
    r.grid_size = grid_size;
    r.rounds = rounds;
    r.converged = converged;
    auto modular = [&](double lambda) {
        ++r.evaluations;
        return grid_modular(table, lambda);
    };

    const double m1 = modular(1.0);
    if (m1 == 0.0) {
        // All grid increments vanish, so every positive scale is admissible.
        r.norm = r.bracket_lo = r.bracket_hi = 0.0;
        r.modular_at_norm = 0.0;
        return r;
    }

    double lo = 0.0, hi = 0.0;
    double modular_at_hi = 0.0;
    if (m1 <= 1.0) {
        hi = 1.0;
        modular_at_hi = m1;
        double lam = 1.0;
        while (true) {
            lam /= 2.0;
            if (lam < 0x1p-64) break; // norm below any representable interest; lo stays 0
            const double m = modular(lam);
            if (m > 1.0) {
                lo = lam;
                break;
            }
            hi = lam;
            modular_at_hi = m;
        }
    } else {
        lo = 1.0;
        double lam = 1.0;
        while (true) {
            lam *= 2.0;
            if (lam > 0x1p64)
                throw NoFiniteBracketError("modular stays above 1 for every scale up to 2^64");
            const double m = modular(lam);
            if (m <= 1.0) {
                hi = lam;
                modular_at_hi = m;
                break;
            }
            lo = lam;
        }
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double m = modular(mid);
        if (m <= 1.0) {
            hi = mid;
            modular_at_hi = m;
        } else {
            lo = mid;
        }
    }
    r.norm = hi;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.modular_at_norm = modular_at_hi;
    return r;
}

} // namespace

double modular_at_scale(const StepExponent& p, const PointFunction& f, const Grid& g,
                        double lambda) {
    if (!(lambda > 0.0)) throw NonpositiveScaleError("scale must be positive");
    const GridWeightTable table(p, f, g.points);
    return grid_modular(table, lambda);
}

NormResult luxemburg_norm(const StepExponent& p, const PointFunction& f, double tol,
                          const RefineOptions& opts) {
    if (!(tol > 0.0)) throw NonpositiveScaleError("norm tolerance must be positive");
    const RefinedVariation rv = refine_variation_with_grid(p, f, opts, Mode::Plain);
    const GridWeightTable table(p, f, rv.grid.points);
    return norm_on_table(table, tol, rv.grid.size(), rv.result.rounds, rv.result.converged);
}

EmbeddingComparison embedding_compare(const StepExponent& p1, const StepExponent& p2,
                                      const PointFunction& f, double tol,
                                      const RefineOptions& opts) {
    if (!(tol > 0.0)) throw NonpositiveScaleError("norm tolerance must be positive");
    if (!(p1.domain() == p2.domain()))
        throw NotPointwiseOrderedError("exponents live on different domains");
    // Piecewise ordering on the merged breakpoints; overrides are measure zero and
    // never enter the plain modular.
    std::vector<Rational> merged = p1.breakpoints();
    merged.insert(merged.end(), p2.breakpoints().begin(), p2.breakpoints().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        const Rational v1 = p1.piece_values()[p1.piece_right_of(merged[i])];
        const Rational v2 = p2.piece_values()[p2.piece_right_of(merged[i])];
        if (v1 > v2)
            throw NotPointwiseOrderedError("first exponent exceeds the second on a piece");
    }

    const RefinedVariation r1 = refine_variation_with_grid(p1, f, opts, Mode::Plain);
    const RefinedVariation r2 = refine_variation_with_grid(p2, f, opts, Mode::Plain);
    std::vector<Rational> shared = r1.grid.points;
    shared.insert(shared.end(), r2.grid.points.begin(), r2.grid.points.end());
    std::sort(shared.begin(), shared.end());
    shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
    const std::size_t rounds = std::max(r1.result.rounds, r2.result.rounds);
    const bool converged = r1.result.converged && r2.result.converged;

    const GridWeightTable t1(p1, f, shared);
    const GridWeightTable t2(p2, f, shared);
    EmbeddingComparison cmp;
    cmp.lhs = norm_on_table(t1, tol, shared.size(), rounds, converged);
    cmp.rhs = norm_on_table(t2, tol, shared.size(), rounds, converged);
    cmp.ordered = cmp.rhs.norm <= cmp.lhs.norm + tol;
    return cmp;
}

} // namespace varbv
