#pragma once

#include <span>
#include <vector>

#include "measure.hpp"
#include "metric.hpp"
#include "tree.hpp"
#include "wavelets.hpp"

namespace ultrawave {

/// Integration kernel of the operator Tf(x) = ∫ T^(sup(x,y)) (f(x)-f(y)) dν(y):
/// one coefficient per internal vertex, looked up at the supremum of the
/// argument pair. Real-valued kernels give self-adjoint operators.
class OperatorKernel {
public:
    /// Explicit per-vertex table (leaf entries are meaningless and rejected).
    static OperatorKernel from_table(const DirectedTree& tree,
                                     std::vector<Complex> values_by_vertex);

    /// Diameter-power family T^(I) = diameter(I)^-(1+alpha); alpha = 0 on a
    /// unit-diameter root gives T^(root) = 1, alpha = -1 is the flat kernel.
    static OperatorKernel power(const DirectedTree& tree,
                                const UltrametricAssignment& assignment, double alpha);

    Complex at(VertexIndex v) const { return values_.at(v); }
    bool is_real() const { return real_; }

private:
    std::vector<Complex> values_;  // per vertex; valid at internal vertices
    bool real_ = true;
};

/// Eigenvalue attached to the wavelets of internal vertex i:
///     lambda_i = T^(i) nu(D_i) + sum over ancestors J of T^(J) (nu(D_J) - nu(D_child)),
/// the child being the one on the path from J down to i. Evaluated as the
/// literal ancestor sum, which is finite on a finite tree, so no
/// summability condition arises.
Complex eigenvalue_of(const DirectedTree& tree, const BallMeasure& measure,
                      const OperatorKernel& kernel, VertexIndex i);

/// The full closed-form spectrum: lambda per internal vertex, each with
/// multiplicity branching_index - 1, plus the simple eigenvalue 0 on
/// constants.
class Spectrum {
public:
    static Spectrum compute(const DirectedTree& tree, const BallMeasure& measure,
                            const OperatorKernel& kernel);

    Complex eigenvalue(VertexIndex internal) const;
    static constexpr double constant_eigenvalue = 0.0;
    bool is_real() const { return real_; }
    bool has_negative_real_part() const;

    /// Sorted multiset of all eigenvalues with multiplicity (real kernels):
    /// {lambda_i repeated p_i - 1 times} plus one 0.
    std::vector<double> real_multiset(const DirectedTree& tree) const;

private:
    std::vector<Complex> lambda_;  // per vertex; valid at internal vertices
    std::vector<char> valid_;
    bool real_ = true;
};

/// Applies the operator spectrally: analyze, scale each wavelet
/// coefficient by its eigenvalue and the constant coefficient by zero,
/// synthesize.
std::vector<Complex> apply_operator(const DirectedTree& tree, const BallMeasure& measure,
                                    const OperatorKernel& kernel, const WaveletBasis& basis,
                                    std::span<const Complex> f);

/// Heat semigroup e^(-tT) f: wavelet coefficients scaled by exp(-t lambda),
/// constant coefficient unchanged. Requires t >= 0.
std::vector<Complex> heat_apply(const DirectedTree& tree, const BallMeasure& measure,
                                const OperatorKernel& kernel, const WaveletBasis& basis,
                                std::span<const Complex> f, double t);

} // namespace ultrawave
