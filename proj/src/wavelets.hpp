#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "measure.hpp"
#include "tree.hpp"

namespace ultrawave {

using Complex = std::complex<double>;

/// One member of the orthonormal zero-mean space attached to an internal
/// vertex: constant on each maximal subball of the owner, zero outside.
/// child_values is aligned with tree.children(owner).
struct Wavelet {
    VertexIndex owner = kNoVertex;
    std::uint32_t index = 0;  // 0 .. branching_index(owner) - 2
    std::vector<double> child_values;
};

/// The nested two-block scheme over canonically ordered children: wavelet
/// t takes value a_t on children 0..t and b_t on child t+1, zero beyond,
/// with
///     a_t =  sqrt(m_{t+1} / (M_t (M_t + m_{t+1})))
///     b_t = -sqrt(M_t / (m_{t+1} (M_t + m_{t+1})))
/// where m_j is the measure of child j and M_t = m_0 + ... + m_t. Each has
/// zero mean and unit norm, and distinct ones are orthogonal by
/// construction (no Gram-Schmidt cancellation involved).
std::vector<Wavelet> local_basis(const DirectedTree& tree, const BallMeasure& measure,
                                 VertexIndex i);

/// Orthonormal basis of the leaf-function space: the local wavelets of
/// every internal vertex, ordered by (owner id, index), plus the constant
/// member of value total^(-1/2) in the last coefficient slot. A finite
/// tree always has finite total measure, so the normalized constant is
/// always the missing direction and the basis size equals the leaf count.
class WaveletBasis {
public:
    static WaveletBasis build(const DirectedTree& tree, const BallMeasure& measure);

    std::size_t size() const { return wavelets_.size() + 1; }
    std::size_t wavelet_count() const { return wavelets_.size(); }
    const Wavelet& wavelet(std::size_t k) const { return wavelets_[k]; }
    const std::vector<Wavelet>& wavelets() const { return wavelets_; }
    double constant_value() const { return constant_value_; }
    double total_measure() const { return total_; }

    /// First coefficient slot owned by an internal vertex.
    std::size_t offset_of(VertexIndex internal) const;

    /// Leaf values of wavelet k in canonical leaf order (zeros outside the
    /// owner's ball).
    std::vector<double> realize(const DirectedTree& tree, std::size_t k) const;
    std::vector<double> realize_constant(const DirectedTree& tree) const;

private:
    std::vector<Wavelet> wavelets_;
    std::vector<std::size_t> offset_by_vertex_;
    double constant_value_ = 0;
    double total_ = 0;
    std::size_t leaf_count_ = 0;
};

/// Coefficients of f against every basis member under the measure-weighted
/// inner product, by direct inner products (quadratic; the reference
/// path). Layout matches the basis: wavelets first, constant last.
std::vector<Complex> analyze(const DirectedTree& tree, const BallMeasure& measure,
                             const WaveletBasis& basis, std::span<const Complex> f);

/// Same output as analyze to rounding, in one bottom-up pass over the
/// tree (near-linear in the leaf count).
std::vector<Complex> fast_analyze(const DirectedTree& tree, const BallMeasure& measure,
                                  const WaveletBasis& basis, std::span<const Complex> f);

/// Inverse transform; one top-down pass.
std::vector<Complex> synthesize(const DirectedTree& tree, const WaveletBasis& basis,
                                std::span<const Complex> coefficients);

std::vector<Complex> to_complex(std::span<const double> values);
std::vector<double> real_part(std::span<const Complex> values);

} // namespace ultrawave
