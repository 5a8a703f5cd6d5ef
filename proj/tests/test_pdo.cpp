#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracle.hpp"
#include "pdo.hpp"
#include "treespec.hpp"

using namespace ultrawave;

namespace {

DirectedTree binary_fixture() {
    TreeSpec spec;
    spec.children = {{"R", {"A", "B"}}, {"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}};
    return DirectedTree::build(spec);
}

// kernel table T^(R) = 1, T^(A) = T^(B) = 2 on the fixture
OperatorKernel fixture_kernel(const DirectedTree& t) {
    std::vector<Complex> values(t.vertex_count(), 0.0);
    values[t.root()] = 1.0;
    values[t.index_of("A")] = 2.0;
    values[t.index_of("B")] = 2.0;
    return OperatorKernel::from_table(t, std::move(values));
}

OperatorKernel random_kernel(const DirectedTree& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&] { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<Complex> values(t.vertex_count(), 0.0);
    for (VertexIndex v = 0; v < t.vertex_count(); ++v)
        if (t.is_internal(v)) values[v] = 0.1 + 1.9 * u();
    return OperatorKernel::from_table(t, std::move(values));
}

} // namespace

TEST_CASE("power kernels follow the diameter") {
    DirectedTree t = binary_fixture();
    auto metric = UltrametricAssignment::standard(t, t.root());
    SUBCASE("alpha 0 at the unit-diameter root") {
        auto k = OperatorKernel::power(t, metric, 0.0);
        CHECK(k.at(t.root()).real() == doctest::Approx(1.0));
    }
    SUBCASE("alpha 1 doubles the exponent") {
        auto k = OperatorKernel::power(t, metric, 1.0);
        CHECK(k.at(t.index_of("A")).real() == doctest::Approx(4.0));  // 0.5^-2
    }
    SUBCASE("alpha -1 flattens") {
        auto k = OperatorKernel::power(t, metric, -1.0);
        for (VertexIndex v = 0; v < t.vertex_count(); ++v)
            if (t.is_internal(v)) CHECK(k.at(v).real() == doctest::Approx(1.0));
    }
}

TEST_CASE("hand-derived eigenvalues on the fixture") {
    DirectedTree t = binary_fixture();
    auto kernel = fixture_kernel(t);
    SUBCASE("homogeneous measure") {
        auto m = BallMeasure::homogeneous(t, 1.0);
        CHECK(eigenvalue_of(t, m, kernel, t.index_of("A")).real() ==
              doctest::Approx(1.5));
        CHECK(eigenvalue_of(t, m, kernel, t.index_of("B")).real() ==
              doctest::Approx(1.5));
        CHECK(eigenvalue_of(t, m, kernel, t.root()).real() == doctest::Approx(1.0));
    }
    SUBCASE("non-homogeneous masses with the same ball measures") {
        auto m = BallMeasure::from_leaf_masses(
            t, {{"a1", 0.375}, {"a2", 0.125}, {"b1", 0.25}, {"b2", 0.25}});
        CHECK(eigenvalue_of(t, m, kernel, t.index_of("A")).real() ==
              doctest::Approx(1.5));
        CHECK(eigenvalue_of(t, m, kernel, t.index_of("B")).real() ==
              doctest::Approx(1.5));
        CHECK(eigenvalue_of(t, m, kernel, t.root()).real() == doctest::Approx(1.0));
    }
    SUBCASE("leaves have no eigenvalue") {
        auto m = BallMeasure::homogeneous(t, 1.0);
        CHECK_THROWS_AS(eigenvalue_of(t, m, kernel, t.index_of("a1")), Error);
    }
}

TEST_CASE("root eigenvalue is kernel times total measure") {
    for (std::uint64_t seed : {3, 4}) {
        TreeSpecDocument doc = generate_random_document(40, seed);
        DirectedTree t = DirectedTree::build(doc.tree);
        auto m = BallMeasure::from_leaf_masses(t, doc.measure.leaf_masses);
        auto kernel = random_kernel(t, seed);
        Complex expect = kernel.at(t.root()) * m.total();
        CHECK(std::abs(eigenvalue_of(t, m, kernel, t.root()) - expect) < 1e-12);
    }
}

TEST_CASE("ancestor sum satisfies the parent recurrence") {
    // lambda_I = lambda_parent + (T_I - T_parent) nu(D_I), an independent
    // route to the same number
    for (std::uint64_t seed : {5, 6, 7}) {
        TreeSpecDocument doc = generate_random_document(60, seed);
        DirectedTree t = DirectedTree::build(doc.tree);
        auto m = BallMeasure::from_leaf_masses(t, doc.measure.leaf_masses);
        auto kernel = random_kernel(t, seed * 11);
        Spectrum s = Spectrum::compute(t, m, kernel);
        for (VertexIndex v = 0; v < t.vertex_count(); ++v) {
            if (!t.is_internal(v) || v == t.root()) continue;
            VertexIndex p = t.parent(v);
            Complex expect =
                s.eigenvalue(p) + (kernel.at(v) - kernel.at(p)) * m.of(v);
            CHECK(std::abs(s.eigenvalue(v) - expect) <
                  1e-12 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("spectrum fixture values and zero kernel") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::homogeneous(t, 1.0);
    SUBCASE("fixture kernel") {
        Spectrum s = Spectrum::compute(t, m, fixture_kernel(t));
        CHECK(s.eigenvalue(t.index_of("A")).real() == doctest::Approx(1.5));
        CHECK(s.eigenvalue(t.index_of("B")).real() == doctest::Approx(1.5));
        CHECK(s.eigenvalue(t.root()).real() == doctest::Approx(1.0));
        CHECK(Spectrum::constant_eigenvalue == 0.0);
        auto multiset = s.real_multiset(t);
        CHECK(multiset == std::vector<double>{0.0, 1.0, 1.5, 1.5});
    }
    SUBCASE("zero kernel") {
        std::vector<Complex> zeros(t.vertex_count(), 0.0);
        Spectrum s = Spectrum::compute(t, m, OperatorKernel::from_table(t, zeros));
        for (VertexIndex v = 0; v < t.vertex_count(); ++v)
            if (t.is_internal(v)) CHECK(std::abs(s.eigenvalue(v)) == 0.0);
    }
}

TEST_CASE("single-ball star reduces to the empty ancestor sum") {
    DirectedTree t = DirectedTree::padic(4, 1);
    auto m = BallMeasure::homogeneous(t, 1.0);
    std::vector<Complex> values(t.vertex_count(), 0.0);
    values[t.root()] = 3.0;
    Spectrum s = Spectrum::compute(t, m, OperatorKernel::from_table(t, values));
    CHECK(s.eigenvalue(t.root()).real() == doctest::Approx(3.0));
    CHECK(s.real_multiset(t) == std::vector<double>{0.0, 3.0, 3.0, 3.0});
}

TEST_CASE("apply kills constants and scales wavelets") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::homogeneous(t, 1.0);
    auto kernel = fixture_kernel(t);
    auto basis = WaveletBasis::build(t, m);

    SUBCASE("constant goes to zero") {
        std::vector<Complex> f(4, 5.0);
        for (const auto& v : apply_operator(t, m, kernel, basis, f))
            CHECK(std::abs(v) < 1e-12);
    }
    SUBCASE("wavelet at A is an eigenvector with eigenvalue 1.5") {
        std::size_t k = basis.offset_of(t.index_of("A"));
        auto psi = to_complex(basis.realize(t, k));
        auto image = apply_operator(t, m, kernel, basis, psi);
        for (std::size_t r = 0; r < 4; ++r)
            CHECK(std::abs(image[r] - 1.5 * psi[r]) < 1e-12);
    }
    SUBCASE("agrees with the dense oracle on random input") {
        for (std::uint64_t seed : {8, 9}) {
            TreeSpecDocument doc = generate_random_document(64, seed);
            DirectedTree tr = DirectedTree::build(doc.tree);
            auto mr = BallMeasure::from_leaf_masses(tr, doc.measure.leaf_masses);
            auto kr = random_kernel(tr, seed * 7);
            auto br = WaveletBasis::build(tr, mr);
            std::mt19937_64 rng(seed);
            std::vector<Complex> f(tr.leaf_count());
            for (auto& v : f) v = (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;

            auto spectral = apply_operator(tr, mr, kr, br, f);
            auto direct = dense_operator(tr, mr, kr).multiply(f);
            for (std::size_t r = 0; r < f.size(); ++r)
                CHECK(std::abs(spectral[r] - direct[r]) <
                      1e-9 * (1.0 + std::abs(direct[r])));
        }
    }
}

TEST_CASE("deep caterpillar tree: spectrum still matches the dense oracle") {
    // chain of two-child vertices, depth 30: ancestor sums get long and
    // standard diameters get small without leaving double range
    TreeSpec spec;
    std::string spine = "R";
    for (int d = 0; d < 30; ++d) {
        std::string leaf = "leaf" + std::to_string(d);
        std::string next = spine + "v";
        spec.children.emplace_back(spine,
                                   std::vector<std::string>{leaf, next});
        spine = next;
    }
    TreeSpec final_spec = spec;
    // terminate the spine with two leaves
    final_spec.children.back().second = {"leaf29", "end1", "end2"};
    DirectedTree t = DirectedTree::build(final_spec);
    CHECK(t.leaf_count() == 32);

    auto metric = UltrametricAssignment::standard(t, t.root());
    CHECK(verify_ultrametric(t, metric).pass());

    auto m = BallMeasure::homogeneous(t, 1.0);
    auto kernel = OperatorKernel::power(t, metric, 0.5);
    auto basis = WaveletBasis::build(t, m);
    CHECK(verify_diagonalization(t, m, kernel, basis).pass);
    DenseOperator dense = dense_operator(t, m, kernel);
    CHECK(verify_eigenvalue_multiset(t, m, kernel, dense).pass);
    CHECK(verify_gram(t, m, basis).pass);
}

TEST_CASE("real kernels give self-adjoint operators functionally") {
    // <Tf, g> == <f, Tg> under the weighted inner product
    for (std::uint64_t seed : {44, 45}) {
        TreeSpecDocument doc = generate_random_document(48, seed);
        DirectedTree t = DirectedTree::build(doc.tree);
        auto m = BallMeasure::from_leaf_masses(t, doc.measure.leaf_masses);
        auto kernel = random_kernel(t, seed * 3);
        auto basis = WaveletBasis::build(t, m);
        std::mt19937_64 rng(seed);
        auto u = [&] { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
        std::vector<Complex> f(t.leaf_count()), g(t.leaf_count());
        for (auto& v : f) v = u();
        for (auto& v : g) v = u();
        auto tf = apply_operator(t, m, kernel, basis, f);
        auto tg = apply_operator(t, m, kernel, basis, g);
        Complex lhs = 0, rhs = 0;
        for (std::size_t r = 0; r < t.leaf_count(); ++r) {
            lhs += tf[r] * std::conj(g[r]) * m.leaf_mass(r);
            rhs += f[r] * std::conj(tg[r]) * m.leaf_mass(r);
        }
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("complex kernels propagate through spectrum and apply") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::homogeneous(t, 1.0);
    std::vector<Complex> values(t.vertex_count(), 0.0);
    values[t.root()] = Complex(1.0, 0.5);
    values[t.index_of("A")] = Complex(2.0, -1.0);
    values[t.index_of("B")] = 2.0;
    auto kernel = OperatorKernel::from_table(t, values);
    CHECK(!kernel.is_real());

    Spectrum s = Spectrum::compute(t, m, kernel);
    // lambda_A = T_A nu(A) + T_R (1 - nu(A))
    Complex expect = Complex(2.0, -1.0) * 0.5 + Complex(1.0, 0.5) * 0.5;
    CHECK(std::abs(s.eigenvalue(t.index_of("A")) - expect) < 1e-12);
    CHECK(!s.is_real());

    auto basis = WaveletBasis::build(t, m);
    std::mt19937_64 rng(123);
    std::vector<Complex> f(4);
    for (auto& v : f)
        v = Complex((rng() >> 11) * 0x1.0p-53, (rng() >> 11) * 0x1.0p-53);
    auto spectral = apply_operator(t, m, kernel, basis, f);
    auto direct = dense_operator(t, m, kernel).multiply(f);
    for (std::size_t r = 0; r < 4; ++r)
        CHECK(std::abs(spectral[r] - direct[r]) < 1e-12);
}

TEST_CASE("heat evolution") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::homogeneous(t, 1.0);
    auto kernel = fixture_kernel(t);
    auto basis = WaveletBasis::build(t, m);

    SUBCASE("t = 0 is the identity") {
        std::mt19937_64 rng(7);
        std::vector<Complex> f(4);
        for (auto& v : f) v = (rng() >> 11) * 0x1.0p-53;
        auto out = heat_apply(t, m, kernel, basis, f, 0.0);
        for (std::size_t r = 0; r < 4; ++r) CHECK(std::abs(out[r] - f[r]) < 1e-12);
    }
    SUBCASE("wavelet decays by exp(-t lambda)") {
        std::size_t k = basis.offset_of(t.index_of("A"));
        auto psi = to_complex(basis.realize(t, k));
        auto out = heat_apply(t, m, kernel, basis, psi, 1.0);
        const double decay = 0.22313016014842982;  // exp(-1.5)
        for (std::size_t r = 0; r < 4; ++r)
            CHECK(std::abs(out[r] - decay * psi[r]) < 1e-12);
    }
    SUBCASE("long times converge to the weighted mean") {
        std::vector<Complex> f{1.0, 2.0, 3.0, 4.0};
        double mean = 0;
        for (std::size_t r = 0; r < 4; ++r) mean += f[r].real() * m.leaf_mass(r);
        mean /= m.total();
        auto out = heat_apply(t, m, kernel, basis, f, 1e6);
        for (const auto& v : out) CHECK(std::abs(v - mean) < 1e-12);
    }
    SUBCASE("semigroup composition") {
        std::mt19937_64 rng(11);
        std::vector<Complex> f(4);
        for (auto& v : f) v = (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        double s = 0.3, u = 1.1;
        auto two_step = heat_apply(t, m, kernel, basis,
                                   heat_apply(t, m, kernel, basis, f, s), u);
        auto one_step = heat_apply(t, m, kernel, basis, f, s + u);
        for (std::size_t r = 0; r < 4; ++r)
            CHECK(std::abs(two_step[r] - one_step[r]) <
                  1e-9 * (1.0 + std::abs(one_step[r])));
    }
    SUBCASE("negative time is rejected") {
        std::vector<Complex> f(4, 1.0);
        CHECK_THROWS_AS(heat_apply(t, m, kernel, basis, f, -0.5), Error);
    }
}
