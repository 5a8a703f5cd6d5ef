#include "metric.hpp"

#include <cmath>
#include <random>

namespace ultrawave {

namespace {
constexpr double kMonotoneMargin = 1e-12;

void check_increasing(const DirectedTree& tree, const std::vector<double>& d) {
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v) {
        if (!(d[v] > 0) || !std::isfinite(d[v]))
            fail(ErrorCode::NotMonotone,
                 "diameter at '" + tree.name(v) + "' must be a positive finite number");
        for (VertexIndex c : tree.children(v)) {
            if (!(d[c] < d[v] * (1.0 - kMonotoneMargin)))
                fail(ErrorCode::NotMonotone, "diameter at '" + tree.name(c) +
                                                 "' does not strictly decrease below '" +
                                                 tree.name(v) + "'");
        }
    }
}
} // namespace

UltrametricAssignment UltrametricAssignment::standard(const DirectedTree& tree,
                                                      VertexIndex reference) {
    tree.name(reference);  // bounds check
    const std::size_t n = tree.vertex_count();

    // Walk outward from the reference: multiply by the branching index of
    // the upper vertex on increasing links, divide on decreasing ones.
    UltrametricAssignment a;
    a.reference_ = reference;
    a.diameters_.assign(n, 0.0);

    std::vector<double> up(tree.depth(reference) + 1);
    up[0] = 1.0;
    {
        VertexIndex v = reference;
        for (std::size_t k = 1; k < up.size(); ++k) {
            VertexIndex p = tree.parent(v);
            up[k] = up[k - 1] * static_cast<double>(tree.branching_index(p));
            v = p;
        }
    }
    // value at any vertex w: go up from reference to S = sup(reference, w),
    // then down to w. Both segments factor through the ancestor chain.
    for (VertexIndex w = 0; w < n; ++w) {
        VertexIndex s = tree.sup(reference, w);
        double val = up[tree.depth(reference) - tree.depth(s)];
        for (VertexIndex v = w; v != s; v = tree.parent(v))
            val /= static_cast<double>(tree.branching_index(tree.parent(v)));
        a.diameters_[w] = val;
    }
    check_increasing(tree, a.diameters_);
    return a;
}

UltrametricAssignment UltrametricAssignment::from_table(const DirectedTree& tree,
                                                        std::vector<double> diameters,
                                                        VertexIndex reference) {
    tree.name(reference);
    if (diameters.size() != tree.vertex_count())
        fail(ErrorCode::DimensionMismatch,
             "diameter table has " + std::to_string(diameters.size()) + " entries for " +
                 std::to_string(tree.vertex_count()) + " vertices");
    UltrametricAssignment a;
    a.reference_ = reference;
    a.diameters_ = std::move(diameters);
    return a;
}

double distance(const DirectedTree& tree, const UltrametricAssignment& assignment,
                VertexIndex a, VertexIndex b) {
    if (a == b) {
        tree.name(a);
        return 0.0;
    }
    return assignment.diameter(tree.sup(a, b));
}

MetricReport verify_ultrametric(const DirectedTree& tree,
                                const UltrametricAssignment& assignment,
                                std::size_t exhaustive_limit, std::size_t samples,
                                std::uint64_t seed) {
    MetricReport report;
    const std::size_t n = tree.vertex_count();

    for (VertexIndex v = 0; v < n && report.monotone; ++v) {
        double dv = assignment.diameter(v);
        if (!(dv > 0) || !std::isfinite(dv)) {
            report.monotone = false;
            report.monotone_witness = "non-positive diameter at '" + tree.name(v) + "'";
            break;
        }
        for (VertexIndex c : tree.children(v)) {
            if (!(assignment.diameter(c) < dv * (1.0 - kMonotoneMargin))) {
                report.monotone = false;
                report.monotone_witness =
                    "child '" + tree.name(c) + "' vs parent '" + tree.name(v) + "'";
                break;
            }
        }
    }

    auto check_triple = [&](VertexIndex a, VertexIndex b, VertexIndex c) {
        double ab = distance(tree, assignment, a, b);
        double ac = distance(tree, assignment, a, c);
        double bc = distance(tree, assignment, b, c);
        if (ab > std::max(ac, bc) * (1.0 + 1e-12)) {
            report.strong_triangle = false;
            report.counterexample = {a, b, c, ab, ac, bc};
            return false;
        }
        return true;
    };

    if (n <= exhaustive_limit) {
        report.exhaustive = true;
        for (VertexIndex a = 0; a < n && report.strong_triangle; ++a)
            for (VertexIndex b = 0; b < n && report.strong_triangle; ++b)
                for (VertexIndex c = 0; c < n; ++c) {
                    ++report.triples_checked;
                    if (!check_triple(a, b, c)) break;
                }
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t k = 0; k < samples; ++k) {
            VertexIndex a = static_cast<VertexIndex>(rng() % n);
            VertexIndex b = static_cast<VertexIndex>(rng() % n);
            VertexIndex c = static_cast<VertexIndex>(rng() % n);
            ++report.triples_checked;
            if (!check_triple(a, b, c)) break;
        }
    }
    return report;
}

std::vector<Ball> balls_of(const DirectedTree& tree, const UltrametricAssignment& assignment) {
    std::vector<Ball> balls;
    balls.reserve(tree.vertex_count());
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v)
        balls.push_back({tree.leaves_under(v), tree.is_leaf(v) ? 0.0 : assignment.diameter(v)});
    return balls;
}

} // namespace ultrawave
