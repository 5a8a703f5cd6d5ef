#include "tree.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ultrawave {

DirectedTree DirectedTree::build(const TreeSpec& spec) {
    if (spec.children.empty())
        fail(ErrorCode::InvalidArgument, "empty tree spec");

    // Gather vertices and parent references, catching duplicates.
    std::map<std::string, std::vector<std::string>> kids;
    std::map<std::string, std::string> parent_of;
    std::set<std::string> all;

    for (const auto& [v, cs] : spec.children) {
        if (v.empty())
            fail(ErrorCode::InvalidArgument, "empty vertex id");
        if (!kids.emplace(v, cs).second)
            fail(ErrorCode::DuplicateId, "vertex '" + v + "' declared twice");
        all.insert(v);
    }
    for (const auto& [v, cs] : kids) {
        std::set<std::string> seen;
        for (const auto& c : cs) {
            if (c.empty())
                fail(ErrorCode::InvalidArgument, "empty vertex id");
            if (c == v)
                fail(ErrorCode::CycleDetected, "vertex '" + v + "' is its own child");
            if (!seen.insert(c).second)
                fail(ErrorCode::DuplicateId,
                     "child '" + c + "' listed twice under '" + v + "'");
            auto [it, fresh] = parent_of.emplace(c, v);
            if (!fresh)
                fail(ErrorCode::DuplicateId, "vertex '" + c + "' is a child of both '" +
                                                 it->second + "' and '" + v + "'");
            all.insert(c);
        }
    }

    // Exactly one parentless vertex: the root.
    std::vector<std::string> roots;
    for (const auto& v : all)
        if (!parent_of.count(v)) roots.push_back(v);
    if (roots.empty())
        fail(ErrorCode::CycleDetected, "every vertex has a parent; the tree contains a cycle");
    if (roots.size() > 1)
        fail(ErrorCode::Disconnected,
             "multiple parentless vertices: '" + roots[0] + "', '" + roots[1] + "'");
    const std::string& root_name = roots[0];

    // Depth-first relabeling in preorder, children in lexicographic order.
    DirectedTree t;
    t.names_.reserve(all.size());
    std::vector<std::pair<std::string, int>> stack{{root_name, 0}};
    while (!stack.empty()) {
        auto [v, d] = std::move(stack.back());
        stack.pop_back();
        VertexIndex idx = static_cast<VertexIndex>(t.names_.size());
        t.index_.emplace(v, idx);
        t.depth_.push_back(d);
        auto it = kids.find(v);
        if (it != kids.end()) {
            std::vector<std::string> cs = it->second;
            std::sort(cs.begin(), cs.end());
            // reversed push keeps lexicographic visit order
            for (auto rit = cs.rbegin(); rit != cs.rend(); ++rit)
                stack.emplace_back(std::move(*rit), d + 1);
        }
        t.names_.push_back(std::move(v));
    }

    if (t.names_.size() != all.size())
        fail(ErrorCode::CycleDetected,
             "cycle among vertices not reachable from root '" + root_name + "'");

    const std::size_t n = t.names_.size();
    t.parent_.assign(n, kNoVertex);
    t.child_begin_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        auto it = kids.find(t.names_[v]);
        t.child_begin_[v + 1] =
            t.child_begin_[v] + (it == kids.end() ? 0 : it->second.size());
    }
    t.child_data_.assign(t.child_begin_[n], kNoVertex);
    for (std::size_t v = 0; v < n; ++v) {
        auto it = kids.find(t.names_[v]);
        if (it == kids.end()) continue;
        std::vector<VertexIndex> cs;
        cs.reserve(it->second.size());
        for (const auto& c : it->second) cs.push_back(t.index_.at(c));
        std::sort(cs.begin(), cs.end());  // preorder index order == id order
        std::copy(cs.begin(), cs.end(), t.child_data_.begin() + t.child_begin_[v]);
        for (VertexIndex c : cs) t.parent_[c] = static_cast<VertexIndex>(v);
    }

    for (std::size_t v = 0; v < n; ++v) {
        std::size_t b = t.child_begin_[v + 1] - t.child_begin_[v];
        if (b == 1)
            fail(ErrorCode::BranchingIndexOne,
                 "vertex '" + t.names_[v] + "' has exactly one child");
    }
    if (n >= 2 && t.child_begin_[1] - t.child_begin_[0] < 2)
        fail(ErrorCode::RootDegenerate,
             "root '" + t.names_[0] + "' has fewer than two children");

    t.finalize();
    return t;
}

DirectedTree DirectedTree::padic(int p, int depth) {
    if (p < 2)
        fail(ErrorCode::InvalidArgument, "p must be >= 2, got " + std::to_string(p));
    if (depth < 1)
        fail(ErrorCode::InvalidArgument, "depth must be >= 1, got " + std::to_string(depth));

    const std::size_t width = std::to_string(p - 1).size();
    auto digit = [&](int k) {
        std::string s = std::to_string(k);
        return std::string(width - s.size(), '0') + s;
    };

    TreeSpec spec;
    std::vector<std::string> level{"R"};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::string> next;
        next.reserve(level.size() * p);
        for (const auto& v : level) {
            std::vector<std::string> cs;
            cs.reserve(p);
            for (int k = 0; k < p; ++k) cs.push_back(v + "." + digit(k));
            next.insert(next.end(), cs.begin(), cs.end());
            spec.children.emplace_back(v, std::move(cs));
        }
        level = std::move(next);
    }
    return build(spec);
}

void DirectedTree::finalize() {
    const std::size_t n = names_.size();

    subtree_end_.assign(n, 0);
    for (std::size_t v = n; v-- > 0;) {
        VertexIndex end = static_cast<VertexIndex>(v + 1);
        for (VertexIndex c : children(static_cast<VertexIndex>(v)))
            end = std::max(end, subtree_end_[c]);
        subtree_end_[v] = end;
    }

    leaf_rank_.assign(n, static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < n; ++v) {
        if (child_begin_[v + 1] == child_begin_[v]) {
            leaf_rank_[v] = leaves_.size();
            leaves_.push_back(static_cast<VertexIndex>(v));
        }
    }
    // preorder => leaves under v are a contiguous run of leaves_
    leaf_begin_.assign(n + 1, 0);
    {
        std::size_t next = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (leaf_rank_[v] != static_cast<std::size_t>(-1)) ++next;
            leaf_begin_[v + 1] = next;
        }
    }

    for (std::size_t v = 0; v < n; ++v)
        if (child_begin_[v + 1] > child_begin_[v])
            internal_by_name_.push_back(static_cast<VertexIndex>(v));
    std::sort(internal_by_name_.begin(), internal_by_name_.end(),
              [&](VertexIndex a, VertexIndex b) { return names_[a] < names_[b]; });

    // Euler tour + sparse table for O(1) LCA
    euler_.clear();
    euler_.reserve(2 * n);
    first_visit_.assign(n, 0);
    std::vector<std::pair<VertexIndex, std::size_t>> st{{root(), 0}};
    while (!st.empty()) {
        auto& [v, ci] = st.back();
        if (ci == 0) {
            first_visit_[v] = euler_.size();
            euler_.push_back(v);
        }
        auto cs = children(v);
        if (ci < cs.size()) {
            VertexIndex c = cs[ci++];
            st.emplace_back(c, 0);
        } else {
            st.pop_back();
            if (!st.empty()) euler_.push_back(st.back().first);
        }
    }

    const std::size_t m = euler_.size();
    std::size_t levels = 1;
    while ((std::size_t{1} << levels) <= m) ++levels;
    rmq_.assign(levels, std::vector<std::uint32_t>(m));
    for (std::size_t i = 0; i < m; ++i) rmq_[0][i] = static_cast<std::uint32_t>(i);
    for (std::size_t k = 1; k < levels; ++k) {
        const std::size_t half = std::size_t{1} << (k - 1);
        for (std::size_t i = 0; i + (std::size_t{1} << k) <= m; ++i) {
            std::uint32_t a = rmq_[k - 1][i];
            std::uint32_t b = rmq_[k - 1][i + half];
            rmq_[k][i] = depth_[euler_[a]] <= depth_[euler_[b]] ? a : b;
        }
    }
}

std::size_t DirectedTree::rmq_argmin(std::size_t lo, std::size_t hi) const {
    // argmin of depth over euler_[lo..hi], inclusive
    std::size_t len = hi - lo + 1;
    std::size_t k = 0;
    while ((std::size_t{2} << k) <= len) ++k;
    std::uint32_t a = rmq_[k][lo];
    std::uint32_t b = rmq_[k][hi + 1 - (std::size_t{1} << k)];
    return depth_[euler_[a]] <= depth_[euler_[b]] ? a : b;
}

VertexIndex DirectedTree::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
        fail(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(id) + "'");
    return it->second;
}

std::optional<VertexIndex> DirectedTree::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool DirectedTree::le(VertexIndex a, VertexIndex b) const {
    check(a);
    check(b);
    return b <= a && a < subtree_end_[b];
}

VertexIndex DirectedTree::sup(VertexIndex a, VertexIndex b) const {
    check(a);
    check(b);
    std::size_t fa = first_visit_[a], fb = first_visit_[b];
    if (fa > fb) std::swap(fa, fb);
    return euler_[rmq_argmin(fa, fb)];
}

std::vector<VertexIndex> DirectedTree::path_up(VertexIndex from, VertexIndex to) const {
    if (!le(from, to))
        fail(ErrorCode::NotComparable,
             "'" + names_[to] + "' is not an ancestor-or-self of '" + names_[from] + "'");
    std::vector<VertexIndex> path;
    for (VertexIndex v = from;; v = parent_[v]) {
        path.push_back(v);
        if (v == to) break;
    }
    return path;
}

VertexIndex DirectedTree::child_toward(VertexIndex j, VertexIndex i) const {
    if (i == j || !le(i, j))
        fail(ErrorCode::NotStrictAncestor,
             "'" + names_[j] + "' is not a strict ancestor of '" + names_[i] + "'");
    auto cs = children(j);
    // children are in increasing preorder; subtree ranges partition (j, end)
    auto it = std::upper_bound(cs.begin(), cs.end(), i);
    VertexIndex c = *(it - 1);
    return c;
}

std::span<const VertexIndex> DirectedTree::leaves_under(VertexIndex v) const {
    check(v);
    return {leaves_.data() + leaf_begin_[v], leaf_begin_[subtree_end_[v]] - leaf_begin_[v]};
}

std::size_t DirectedTree::leaf_rank(VertexIndex v) const {
    check(v);
    std::size_t r = leaf_rank_[v];
    if (r == static_cast<std::size_t>(-1))
        fail(ErrorCode::InvalidArgument, "vertex '" + names_[v] + "' is not a leaf");
    return r;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Parse: return "Parse";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::BranchingIndexOne: return "BranchingIndexOne";
        case ErrorCode::RootDegenerate: return "RootDegenerate";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::NotComparable: return "NotComparable";
        case ErrorCode::NotStrictAncestor: return "NotStrictAncestor";
        case ErrorCode::MissingLeafMass: return "MissingLeafMass";
        case ErrorCode::NonPositiveMass: return "NonPositiveMass";
        case ErrorCode::NotInternalVertex: return "NotInternalVertex";
        case ErrorCode::NotMonotone: return "NotMonotone";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::MissingKernel: return "MissingKernel";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

} // namespace ultrawave
