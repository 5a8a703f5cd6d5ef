#pragma once

#include <complex>
#include <string>
#include <vector>

#include "measure.hpp"
#include "pdo.hpp"
#include "tree.hpp"
#include "wavelets.hpp"

namespace ultrawave {

/// Direct dense realization of the operator on point masses:
///   A[x][y] = -T^(sup(x,y)) m(y)            for x != y
///   A[x][x] =  sum over y != x of T^(sup(x,y)) m(y)
/// Rows and columns follow canonical leaf order. The supremum is found by
/// naive parent walks, independent of the tree's fast lookup structures.
struct DenseOperator {
    std::size_t n = 0;
    std::vector<std::complex<double>> a;  // row-major n x n
    std::vector<double> mass;
    bool real_kernel = true;

    std::complex<double>& at(std::size_t x, std::size_t y) { return a[x * n + y]; }
    std::complex<double> at(std::size_t x, std::size_t y) const { return a[x * n + y]; }

    std::vector<std::complex<double>> multiply(std::span<const std::complex<double>> f) const;
    std::vector<double> multiply_real(std::span<const double> f) const;

    /// Eigenvalue multiset by a dense symmetric solve of the
    /// mass-conjugated matrix sqrt(m_x) A[x][y] / sqrt(m_y); real kernels
    /// only. Sorted ascending.
    std::vector<double> eigenvalues() const;
};

inline constexpr std::size_t kDenseLeafCap = 2048;

DenseOperator dense_operator(const DirectedTree& tree, const BallMeasure& measure,
                             const OperatorKernel& kernel,
                             std::size_t max_leaves = kDenseLeafCap);

struct CheckReport {
    std::string check;
    bool pass = false;
    bool skipped = false;
    double worst_residual = 0;
    std::string witness;
};

/// A psi = lambda psi for every wavelet, residual in sup norm against
/// 1e-9 (1 + |lambda|).
CheckReport verify_diagonalization(const DirectedTree& tree, const BallMeasure& measure,
                                   const OperatorKernel& kernel, const WaveletBasis& basis);

/// For the indicator of every ball: wavelet coefficient mass equals
/// nu^2 (1/nu - 1/A) and the constant member contributes nu^2/A, both to
/// 1e-9 relative. Coefficients are taken by direct inner products.
CheckReport verify_parseval(const DirectedTree& tree, const BallMeasure& measure,
                            const WaveletBasis& basis);

/// Mass-weighted symmetry m_x A[x][y] = m_y A[y][x] to 1e-12 absolute
/// (real kernels; skipped otherwise).
CheckReport verify_selfadjoint(const DenseOperator& dense);

/// Row sums vanish to 1e-12 absolute (the operator kills constants).
CheckReport verify_kills_constants(const DenseOperator& dense);

/// Gram matrix of the realized basis under the measure-weighted inner
/// product is the identity: off-diagonal 1e-9 absolute, diagonal 1e-9
/// relative.
CheckReport verify_gram(const DirectedTree& tree, const BallMeasure& measure,
                        const WaveletBasis& basis);

/// Sorted eigenvalue multisets agree pairwise to 1e-9 (1 + |lambda|):
/// dense solve vs closed form with multiplicities (real kernels).
CheckReport verify_eigenvalue_multiset(const DirectedTree& tree, const BallMeasure& measure,
                                       const OperatorKernel& kernel,
                                       const DenseOperator& dense);

/// Dense matrix-vector product matches the spectral application on a
/// seeded random function, 1e-9 relative.
CheckReport verify_apply_agreement(const DirectedTree& tree, const BallMeasure& measure,
                                   const OperatorKernel& kernel, const WaveletBasis& basis,
                                   const DenseOperator& dense, std::uint64_t seed = 7);

} // namespace ultrawave
