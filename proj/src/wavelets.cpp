#include "wavelets.hpp"

#include <algorithm>
#include <cmath>

namespace ultrawave {

std::vector<Wavelet> local_basis(const DirectedTree& tree, const BallMeasure& measure,
                                 VertexIndex i) {
    auto cs = tree.children(i);
    if (cs.empty())
        fail(ErrorCode::NotInternalVertex,
             "vertex '" + tree.name(i) + "' is a leaf, no local basis");

    const std::size_t p = cs.size();
    std::vector<Wavelet> out;
    out.reserve(p - 1);
    double prefix = measure.of(cs[0]);
    for (std::size_t t = 0; t + 1 < p; ++t) {
        double next = measure.of(cs[t + 1]);
        double denom = prefix + next;
        double a = std::sqrt(next / (prefix * denom));
        double b = -std::sqrt(prefix / (next * denom));
        Wavelet w;
        w.owner = i;
        w.index = static_cast<std::uint32_t>(t);
        w.child_values.assign(p, 0.0);
        for (std::size_t j = 0; j <= t; ++j) w.child_values[j] = a;
        w.child_values[t + 1] = b;
        out.push_back(std::move(w));
        prefix = denom;
    }
    return out;
}

WaveletBasis WaveletBasis::build(const DirectedTree& tree, const BallMeasure& measure) {
    WaveletBasis basis;
    basis.leaf_count_ = tree.leaf_count();
    basis.total_ = measure.total();
    basis.constant_value_ = 1.0 / std::sqrt(basis.total_);
    basis.offset_by_vertex_.assign(tree.vertex_count(), static_cast<std::size_t>(-1));
    for (VertexIndex i : tree.internal_by_name()) {
        basis.offset_by_vertex_[i] = basis.wavelets_.size();
        auto local = local_basis(tree, measure, i);
        basis.wavelets_.insert(basis.wavelets_.end(),
                               std::make_move_iterator(local.begin()),
                               std::make_move_iterator(local.end()));
    }
    return basis;
}

std::size_t WaveletBasis::offset_of(VertexIndex internal) const {
    std::size_t off = offset_by_vertex_.at(internal);
    if (off == static_cast<std::size_t>(-1))
        fail(ErrorCode::NotInternalVertex, "vertex has no wavelets");
    return off;
}

std::vector<double> WaveletBasis::realize(const DirectedTree& tree, std::size_t k) const {
    const Wavelet& w = wavelets_.at(k);
    std::vector<double> values(tree.leaf_count(), 0.0);
    auto cs = tree.children(w.owner);
    for (std::size_t j = 0; j < cs.size(); ++j) {
        double v = w.child_values[j];
        if (v == 0.0) continue;
        for (VertexIndex leaf : tree.leaves_under(cs[j]))
            values[tree.leaf_rank(leaf)] = v;
    }
    return values;
}

std::vector<double> WaveletBasis::realize_constant(const DirectedTree& tree) const {
    return std::vector<double>(tree.leaf_count(), constant_value_);
}

namespace {
void require_leaf_sized(const WaveletBasis& basis, std::size_t n, const char* what) {
    if (n != basis.size())
        fail(ErrorCode::DimensionMismatch,
             std::string(what) + " has " + std::to_string(n) + " entries, expected " +
                 std::to_string(basis.size()));
}
} // namespace

std::vector<Complex> analyze(const DirectedTree& tree, const BallMeasure& measure,
                             const WaveletBasis& basis, std::span<const Complex> f) {
    require_leaf_sized(basis, f.size(), "function");
    const std::size_t n = tree.leaf_count();
    std::vector<Complex> coeffs(basis.size());
    for (std::size_t k = 0; k < basis.wavelet_count(); ++k) {
        std::vector<double> w = basis.realize(tree, k);
        Complex acc = 0;
        for (std::size_t r = 0; r < n; ++r) acc += f[r] * w[r] * measure.leaf_mass(r);
        coeffs[k] = acc;
    }
    Complex acc = 0;
    for (std::size_t r = 0; r < n; ++r) acc += f[r] * measure.leaf_mass(r);
    coeffs.back() = acc * basis.constant_value();
    return coeffs;
}

std::vector<Complex> fast_analyze(const DirectedTree& tree, const BallMeasure& measure,
                                  const WaveletBasis& basis, std::span<const Complex> f) {
    require_leaf_sized(basis, f.size(), "function");
    const std::size_t n = tree.vertex_count();

    // integral of f over the ball at each vertex, children before parents
    std::vector<Complex> integral(n);
    for (std::size_t v = n; v-- > 0;) {
        auto cs = tree.children(static_cast<VertexIndex>(v));
        if (cs.empty()) {
            std::size_t r = tree.leaf_rank(static_cast<VertexIndex>(v));
            integral[v] = f[r] * measure.leaf_mass(r);
        } else {
            Complex sum = 0;
            for (VertexIndex c : cs) sum += integral[c];
            integral[v] = sum;
        }
    }

    std::vector<Complex> coeffs(basis.size());
    for (VertexIndex i : tree.internal_by_name()) {
        auto cs = tree.children(i);
        std::size_t off = basis.offset_of(i);
        Complex prefix = integral[cs[0]];
        for (std::size_t t = 0; t + 1 < cs.size(); ++t) {
            const Wavelet& w = basis.wavelet(off + t);
            double a = w.child_values[0];
            double b = w.child_values[t + 1];
            coeffs[off + t] = a * prefix + b * integral[cs[t + 1]];
            prefix += integral[cs[t + 1]];
        }
    }
    coeffs.back() = integral[0] * basis.constant_value();
    return coeffs;
}

std::vector<Complex> synthesize(const DirectedTree& tree, const WaveletBasis& basis,
                                std::span<const Complex> coefficients) {
    require_leaf_sized(basis, coefficients.size(), "coefficient vector");
    const std::size_t n = tree.vertex_count();

    // value accumulated on the ball at each vertex, parents before children
    std::vector<Complex> acc(n);
    acc[0] = coefficients.back() * basis.constant_value();
    for (VertexIndex v = 0; v < n; ++v) {
        auto cs = tree.children(v);
        if (cs.empty()) continue;
        std::size_t off = basis.offset_of(v);
        const std::size_t p = cs.size();
        // child j receives sum over t >= j of c_t * a_t, plus c_{j-1} * b_{j-1}
        Complex suffix = 0;
        std::vector<Complex> add(p);
        for (std::size_t j = p; j-- > 0;) {
            if (j + 1 < p) {
                const Wavelet& w = basis.wavelet(off + j);
                suffix += coefficients[off + j] * w.child_values[0];
            }
            add[j] = suffix;
            if (j > 0) {
                const Wavelet& w = basis.wavelet(off + j - 1);
                add[j] += coefficients[off + j - 1] * w.child_values[j];
            }
        }
        for (std::size_t j = 0; j < p; ++j) acc[cs[j]] = acc[v] + add[j];
    }

    std::vector<Complex> f(tree.leaf_count());
    for (std::size_t r = 0; r < tree.leaf_count(); ++r) f[r] = acc[tree.leaves()[r]];
    return f;
}

std::vector<Complex> to_complex(std::span<const double> values) {
    return {values.begin(), values.end()};
}

std::vector<double> real_part(std::span<const Complex> values) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
    return out;
}

} // namespace ultrawave
