#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace ultrawave {

using VertexIndex = std::uint32_t;
inline constexpr VertexIndex kNoVertex = 0xffffffffu;

/// Vertex/children description consumed by DirectedTree::build. Order of
/// entries does not matter; children lists are re-sorted canonically.
struct TreeSpec {
    std::vector<std::pair<std::string, std::vector<std::string>>> children;
};

/// Finite rooted tree with validated branching structure.
///
/// Vertices are identified by strings; internally they are relabeled to
/// dense indices in depth-first preorder with children visited in
/// lexicographic id order (the canonical ordering used everywhere: child
/// lists, leaf vectors, serialization). The root is the maximal vertex of
/// the direction; `a <= b` means b is an ancestor-or-self of a.
///
/// Invariants enforced at build time:
///   - connected, acyclic, exactly one parentless vertex (the root)
///   - every vertex has 0 or >= 2 children (branching index never 1)
///
/// Immutable after construction; concurrent reads are safe.
class DirectedTree {
public:
    static DirectedTree build(const TreeSpec& spec);

    /// Complete p-ary tree of the given depth (p^depth leaves). Vertex ids
    /// are "R" at the root and "<parent>.<digit>" below, digits zero-padded
    /// so lexicographic order equals numeric order.
    static DirectedTree padic(int p, int depth);

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t leaf_count() const { return leaves_.size(); }
    VertexIndex root() const { return 0; }

    /// Index for an id; throws UnknownVertex if absent.
    VertexIndex index_of(std::string_view id) const;
    std::optional<VertexIndex> find(std::string_view id) const;
    const std::string& name(VertexIndex v) const { check(v); return names_[v]; }

    VertexIndex parent(VertexIndex v) const { check(v); return parent_[v]; }
    std::span<const VertexIndex> children(VertexIndex v) const {
        check(v);
        return {child_data_.data() + child_begin_[v],
                child_begin_[v + 1] - child_begin_[v]};
    }
    std::size_t branching_index(VertexIndex v) const { return children(v).size(); }
    bool is_leaf(VertexIndex v) const { return branching_index(v) == 0; }
    bool is_internal(VertexIndex v) const { return !is_leaf(v); }
    int depth(VertexIndex v) const { check(v); return depth_[v]; }

    /// True when b is an ancestor of a or equal to it (a <= b).
    bool le(VertexIndex a, VertexIndex b) const;

    /// Least common ancestor (the minimal ball containing both). O(1) after
    /// the Euler-tour/sparse-table preprocessing done at build.
    VertexIndex sup(VertexIndex a, VertexIndex b) const;

    /// Vertices from `from` to its ancestor `to` along parent links,
    /// inclusive both ends. Throws NotComparable unless from <= to.
    std::vector<VertexIndex> path_up(VertexIndex from, VertexIndex to) const;

    /// The unique child of j whose subtree contains i. Requires i < j
    /// strictly; throws NotStrictAncestor otherwise.
    VertexIndex child_toward(VertexIndex j, VertexIndex i) const;

    /// All leaves in canonical (depth-first) order.
    std::span<const VertexIndex> leaves() const { return leaves_; }

    /// Leaves of the subtree rooted at v, a contiguous slice of leaves().
    /// A leaf maps to the singleton slice containing itself.
    std::span<const VertexIndex> leaves_under(VertexIndex v) const;

    /// Position of a leaf within leaves(); throws when v is not a leaf.
    std::size_t leaf_rank(VertexIndex v) const;

    /// Internal vertices sorted by id, the canonical order for wavelet and
    /// spectrum enumeration.
    std::span<const VertexIndex> internal_by_name() const { return internal_by_name_; }

private:
    DirectedTree() = default;

    void check(VertexIndex v) const {
        if (v >= names_.size())
            fail(ErrorCode::UnknownVertex,
                 "vertex index " + std::to_string(v) + " out of range");
    }

    void finalize();  // indices, leaf ranges, Euler tour, sparse table

    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexIndex> index_;
    std::vector<VertexIndex> parent_;
    std::vector<VertexIndex> child_data_;
    std::vector<std::size_t> child_begin_;
    std::vector<int> depth_;
    std::vector<VertexIndex> subtree_end_;  // preorder labels: subtree of v is [v, subtree_end_[v])
    std::vector<VertexIndex> leaves_;
    std::vector<std::size_t> leaf_rank_;
    std::vector<std::size_t> leaf_begin_;   // range into leaves_ per vertex
    std::vector<VertexIndex> internal_by_name_;

    // Euler tour LCA
    std::vector<VertexIndex> euler_;
    std::vector<std::size_t> first_visit_;
    std::vector<std::vector<std::uint32_t>> rmq_;  // sparse table of euler positions
    std::size_t rmq_argmin(std::size_t lo, std::size_t hi) const;
};

} // namespace ultrawave
