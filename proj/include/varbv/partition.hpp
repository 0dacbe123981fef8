#pragma once

#include "varbv/interval.hpp"
#include "varbv/rational.hpp"

#include <cstddef>
#include <vector>

namespace varbv {

// Finite partition a = t_0 < t_1 < ... < t_n = b of some interval; n >= 1.
struct Partition {
    std::vector<Rational> points;

    explicit Partition(std::vector<Rational> pts);

    std::size_t interval_count() const { return points.size() - 1; }
    Interval interval(std::size_t k) const { return {points[k], points[k + 1]}; }
    Interval span() const { return {points.front(), points.back()}; }
};

// Partition plus one tag per interval, t_{k-1} <= x_k <= t_k.
struct TaggedPartition {
    Partition partition;
    std::vector<Rational> tags;

    TaggedPartition(Partition p, std::vector<Rational> tag_points);
};

// Candidate partition points for the DP: strictly increasing, first = a, last = b.
// generation counts refinement rounds applied since the seed grid.
struct Grid {
    std::vector<Rational> points;
    int generation = 0;

    explicit Grid(std::vector<Rational> pts, int gen = 0);

    std::size_t size() const { return points.size(); }
    Interval span() const { return {points.front(), points.back()}; }
};

} // namespace varbv
