#pragma once

#include <string>
#include <vector>

#include "tree.hpp"

namespace ultrawave {

/// A positive function on the vertices, strictly increasing along the
/// direction (child value < parent value). Its value at a vertex is the
/// diameter of the corresponding ball; distances between distinct
/// vertices are read off at their supremum.
class UltrametricAssignment {
public:
    /// Branching-index construction: the value at I is the product over
    /// the links of the path from `reference` to I of p^{+1} on increasing
    /// links and p^{-1} on decreasing ones, p being the branching index of
    /// the upper vertex of the link. The reference itself gets 1. With the
    /// root as reference this is 1/(product of branching indices above I);
    /// on a homogeneous p-ary tree that equals p^(-depth).
    static UltrametricAssignment standard(const DirectedTree& tree, VertexIndex reference);

    /// Explicit diameter table, one value per vertex (indexed like the
    /// tree). Values are not validated here; run verify_ultrametric to
    /// check positivity and monotonicity, so that violating tables can be
    /// reported rather than rejected at construction.
    static UltrametricAssignment from_table(const DirectedTree& tree,
                                            std::vector<double> diameters,
                                            VertexIndex reference);

    double diameter(VertexIndex v) const { return diameters_.at(v); }
    const std::vector<double>& diameters() const { return diameters_; }
    VertexIndex reference() const { return reference_; }

private:
    std::vector<double> diameters_;
    VertexIndex reference_ = kNoVertex;
};

/// 0 for a == b, otherwise the diameter at sup(a, b). Defined on every
/// vertex of the extended tree (points and balls alike).
double distance(const DirectedTree& tree, const UltrametricAssignment& assignment,
                VertexIndex a, VertexIndex b);

struct TripleCounterexample {
    VertexIndex a = kNoVertex, b = kNoVertex, c = kNoVertex;
    double ab = 0, ac = 0, bc = 0;
};

struct MetricReport {
    bool monotone = true;
    bool strong_triangle = true;
    std::string monotone_witness;       // "child 'X' vs parent 'Y'" when violated
    TripleCounterexample counterexample;  // valid when !strong_triangle
    std::size_t triples_checked = 0;
    bool exhaustive = false;
    bool pass() const { return monotone && strong_triangle; }
};

/// Checks monotonicity along every link and the strong triangle inequality
/// |ab| <= max(|ac|, |bc|): exhaustively over all vertex triples when the
/// tree has at most `exhaustive_limit` vertices, otherwise over `samples`
/// seeded random triples.
MetricReport verify_ultrametric(const DirectedTree& tree,
                                const UltrametricAssignment& assignment,
                                std::size_t exhaustive_limit = 50,
                                std::size_t samples = 100000,
                                std::uint64_t seed = 20240901);

struct Ball {
    std::span<const VertexIndex> members;  // leaves of the ball
    double diameter = 0;                   // 0 for singleton balls at leaves
};

/// The ball at every vertex: an internal vertex yields the leaves below it
/// with its assigned diameter, a leaf yields the singleton of diameter 0.
std::vector<Ball> balls_of(const DirectedTree& tree, const UltrametricAssignment& assignment);

} // namespace ultrawave
