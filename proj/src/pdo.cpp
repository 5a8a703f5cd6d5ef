#include "pdo.hpp"

#include <algorithm>
#include <cmath>

namespace ultrawave {

OperatorKernel OperatorKernel::from_table(const DirectedTree& tree,
                                          std::vector<Complex> values_by_vertex) {
    if (values_by_vertex.size() != tree.vertex_count())
        fail(ErrorCode::DimensionMismatch,
             "kernel table has " + std::to_string(values_by_vertex.size()) +
                 " entries for " + std::to_string(tree.vertex_count()) + " vertices");
    OperatorKernel k;
    k.values_ = std::move(values_by_vertex);
    k.real_ = std::all_of(k.values_.begin(), k.values_.end(),
                          [](Complex v) { return v.imag() == 0.0; });
    return k;
}

OperatorKernel OperatorKernel::power(const DirectedTree& tree,
                                     const UltrametricAssignment& assignment,
                                     double alpha) {
    OperatorKernel k;
    k.values_.assign(tree.vertex_count(), 0.0);
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v)
        if (tree.is_internal(v))
            k.values_[v] = std::pow(assignment.diameter(v), -(1.0 + alpha));
    k.real_ = true;
    return k;
}

Complex eigenvalue_of(const DirectedTree& tree, const BallMeasure& measure,
                      const OperatorKernel& kernel, VertexIndex i) {
    if (!tree.is_internal(i))
        fail(ErrorCode::NotInternalVertex,
             "eigenvalue requested at leaf '" + tree.name(i) + "'");
    Complex lambda = kernel.at(i) * measure.of(i);
    VertexIndex below = i;
    for (VertexIndex j = tree.parent(i); j != kNoVertex; j = tree.parent(j)) {
        lambda += kernel.at(j) * (measure.of(j) - measure.of(below));
        below = j;
    }
    return lambda;
}

Spectrum Spectrum::compute(const DirectedTree& tree, const BallMeasure& measure,
                           const OperatorKernel& kernel) {
    Spectrum s;
    s.lambda_.assign(tree.vertex_count(), 0.0);
    s.valid_.assign(tree.vertex_count(), 0);
    s.real_ = kernel.is_real();
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v) {
        if (!tree.is_internal(v)) continue;
        s.lambda_[v] = eigenvalue_of(tree, measure, kernel, v);
        s.valid_[v] = 1;
    }
    return s;
}

Complex Spectrum::eigenvalue(VertexIndex internal) const {
    if (internal >= lambda_.size() || !valid_[internal])
        fail(ErrorCode::NotInternalVertex, "no eigenvalue at this vertex");
    return lambda_[internal];
}

bool Spectrum::has_negative_real_part() const {
    for (std::size_t v = 0; v < lambda_.size(); ++v)
        if (valid_[v] && lambda_[v].real() < 0) return true;
    return false;
}

std::vector<double> Spectrum::real_multiset(const DirectedTree& tree) const {
    std::vector<double> all;
    all.reserve(tree.leaf_count());
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v)
        if (valid_[v])
            all.insert(all.end(), tree.branching_index(v) - 1, lambda_[v].real());
    all.push_back(constant_eigenvalue);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<Complex> apply_operator(const DirectedTree& tree, const BallMeasure& measure,
                                    const OperatorKernel& kernel, const WaveletBasis& basis,
                                    std::span<const Complex> f) {
    Spectrum spectrum = Spectrum::compute(tree, measure, kernel);
    std::vector<Complex> coeffs = fast_analyze(tree, measure, basis, f);
    for (std::size_t k = 0; k < basis.wavelet_count(); ++k)
        coeffs[k] *= spectrum.eigenvalue(basis.wavelet(k).owner);
    coeffs.back() = 0.0;  // the operator kills constants
    return synthesize(tree, basis, coeffs);
}

std::vector<Complex> heat_apply(const DirectedTree& tree, const BallMeasure& measure,
                                const OperatorKernel& kernel, const WaveletBasis& basis,
                                std::span<const Complex> f, double t) {
    if (!(t >= 0))
        fail(ErrorCode::InvalidArgument, "diffusion time must be >= 0");
    if (t == 0.0) return {f.begin(), f.end()};  // exact identity
    Spectrum spectrum = Spectrum::compute(tree, measure, kernel);
    std::vector<Complex> coeffs = fast_analyze(tree, measure, basis, f);
    for (std::size_t k = 0; k < basis.wavelet_count(); ++k)
        coeffs[k] *= std::exp(-t * spectrum.eigenvalue(basis.wavelet(k).owner));
    return synthesize(tree, basis, coeffs);
}

} // namespace ultrawave
