#pragma once

#include <span>
#include <string>
#include <vector>

#include "tree.hpp"

namespace ultrawave {

/// Positive ball measure driven by leaf masses: the measure of an
/// internal ball is the sum over its maximal subballs. On a finite tree
/// countable additivity degenerates to these finite sums. Strictly
/// positive masses are required throughout so that every wavelet
/// normalization is well defined.
class BallMeasure {
public:
    /// Masses given per leaf in canonical leaf order (tree.leaves()).
    static BallMeasure from_leaf_masses(const DirectedTree& tree,
                                        std::span<const double> masses);

    /// Masses given as (leaf id, mass) pairs; every leaf must be covered.
    static BallMeasure from_leaf_masses(
        const DirectedTree& tree,
        const std::vector<std::pair<std::string, double>>& masses);

    /// Equal split of `total` among the children of every ball, down to
    /// the leaves.
    static BallMeasure homogeneous(const DirectedTree& tree, double total);

    double of(VertexIndex v) const { return ball_.at(v); }
    double total() const { return ball_[0]; }
    double leaf_mass(std::size_t leaf_rank) const { return leaf_mass_[leaf_rank]; }
    const std::vector<double>& leaf_masses() const { return leaf_mass_; }

private:
    BallMeasure(std::vector<double> ball, std::vector<double> leaf_mass)
        : ball_(std::move(ball)), leaf_mass_(std::move(leaf_mass)) {}

    static BallMeasure accumulate(const DirectedTree& tree, std::vector<double> leaf_mass);

    std::vector<double> ball_;       // per vertex
    std::vector<double> leaf_mass_;  // per leaf rank
};

} // namespace ultrawave
