#include "varbv/partition.hpp"

#include "varbv/errors.hpp"

namespace varbv {

namespace {

void check_points(const std::vector<Rational>& pts, const char* what) {
    if (pts.size() < 2) throw GridTooSmallError(std::string(what) + ": need at least two points");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i - 1] < pts[i]))
            throw ParseError(std::string(what) + ": points must be strictly increasing");
    }
}

} // namespace

Partition::Partition(std::vector<Rational> pts) : points(std::move(pts)) {
    check_points(points, "partition");
}

TaggedPartition::TaggedPartition(Partition p, std::vector<Rational> tag_points)
    : partition(std::move(p)), tags(std::move(tag_points)) {
    if (tags.size() != partition.interval_count())
        throw InvalidTagError("tagged partition: need exactly one tag per interval");
    for (std::size_t k = 0; k < tags.size(); ++k) {
        if (!partition.interval(k).contains(tags[k]))
            throw InvalidTagError("tagged partition: tag escapes its interval");
    }
}

Grid::Grid(std::vector<Rational> pts, int gen) : points(std::move(pts)), generation(gen) {
    check_points(points, "grid");
}

} // namespace varbv
