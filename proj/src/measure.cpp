#include "measure.hpp"

#include <cmath>

namespace ultrawave {

BallMeasure BallMeasure::from_leaf_masses(const DirectedTree& tree,
                                          std::span<const double> masses) {
    if (masses.size() != tree.leaf_count())
        fail(ErrorCode::MissingLeafMass,
             std::to_string(masses.size()) + " masses for " +
                 std::to_string(tree.leaf_count()) + " leaves");
    return accumulate(tree, {masses.begin(), masses.end()});
}

BallMeasure BallMeasure::from_leaf_masses(
    const DirectedTree& tree, const std::vector<std::pair<std::string, double>>& masses) {
    std::vector<double> by_rank(tree.leaf_count(), std::nan(""));
    for (const auto& [id, m] : masses) {
        VertexIndex v = tree.index_of(id);
        if (!tree.is_leaf(v))
            fail(ErrorCode::InvalidArgument,
                 "mass assigned to internal vertex '" + id + "'");
        std::size_t r = tree.leaf_rank(v);
        if (!std::isnan(by_rank[r]))
            fail(ErrorCode::DuplicateId, "mass for leaf '" + id + "' given twice");
        by_rank[r] = m;
    }
    for (std::size_t r = 0; r < by_rank.size(); ++r)
        if (std::isnan(by_rank[r]))
            fail(ErrorCode::MissingLeafMass,
                 "no mass for leaf '" + tree.name(tree.leaves()[r]) + "'");
    return accumulate(tree, std::move(by_rank));
}

BallMeasure BallMeasure::homogeneous(const DirectedTree& tree, double total) {
    if (!(total > 0) || !std::isfinite(total))
        fail(ErrorCode::NonPositiveMass, "total measure must be positive");
    const std::size_t n = tree.vertex_count();
    std::vector<double> ball(n, 0.0);
    ball[0] = total;
    // preorder indices: parents precede children
    for (VertexIndex v = 0; v < n; ++v) {
        auto cs = tree.children(v);
        if (cs.empty()) continue;
        double share = ball[v] / static_cast<double>(cs.size());
        for (VertexIndex c : cs) ball[c] = share;
    }
    std::vector<double> leaf_mass(tree.leaf_count());
    for (std::size_t r = 0; r < tree.leaf_count(); ++r)
        leaf_mass[r] = ball[tree.leaves()[r]];
    return BallMeasure(std::move(ball), std::move(leaf_mass));
}

BallMeasure BallMeasure::accumulate(const DirectedTree& tree, std::vector<double> leaf_mass) {
    for (std::size_t r = 0; r < leaf_mass.size(); ++r) {
        if (!(leaf_mass[r] > 0) || !std::isfinite(leaf_mass[r]))
            fail(ErrorCode::NonPositiveMass,
                 "leaf '" + tree.name(tree.leaves()[r]) + "' has non-positive mass");
    }
    const std::size_t n = tree.vertex_count();
    std::vector<double> ball(n, 0.0);
    for (std::size_t v = n; v-- > 0;) {
        auto cs = tree.children(static_cast<VertexIndex>(v));
        if (cs.empty()) {
            ball[v] = leaf_mass[tree.leaf_rank(static_cast<VertexIndex>(v))];
        } else {
            double sum = 0.0;
            for (VertexIndex c : cs) sum += ball[c];
            ball[v] = sum;
        }
    }
    return BallMeasure(std::move(ball), std::move(leaf_mass));
}

} // namespace ultrawave
