#include <doctest.h>

#include <cmath>

#include "measure.hpp"
#include "metric.hpp"
#include "treespec.hpp"

using namespace ultrawave;

namespace {

DirectedTree binary_fixture() {
    TreeSpec spec;
    spec.children = {{"R", {"A", "B"}}, {"A", {"a1", "a2"}}, {"B", {"b1", "b2"}}};
    return DirectedTree::build(spec);
}

} // namespace

TEST_CASE("equal masses add up the obvious way") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::from_leaf_masses(
        t, {{"a1", 0.25}, {"a2", 0.25}, {"b1", 0.25}, {"b2", 0.25}});
    CHECK(m.of(t.index_of("A")) == doctest::Approx(0.5));
    CHECK(m.of(t.index_of("B")) == doctest::Approx(0.5));
    CHECK(m.total() == doctest::Approx(1.0));
}

TEST_CASE("uneven masses") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::from_leaf_masses(
        t, {{"a1", 0.375}, {"a2", 0.125}, {"b1", 0.25}, {"b2", 0.25}});
    CHECK(m.of(t.index_of("A")) == doctest::Approx(0.5));
    CHECK(m.of(t.index_of("B")) == doctest::Approx(0.5));
    CHECK(m.of(t.root()) == doctest::Approx(1.0));
    CHECK(m.of(t.index_of("a1")) == doctest::Approx(0.375));
}

TEST_CASE("mass validation") {
    DirectedTree t = binary_fixture();
    using Pairs = std::vector<std::pair<std::string, double>>;
    auto code_of = [&](const Pairs& masses) {
        try {
            BallMeasure::from_leaf_masses(t, masses);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;  // sentinel for "did not throw"
    };
    CHECK(code_of({{"a1", 0.5}, {"a2", 0.5}, {"b1", 0.5}}) == ErrorCode::MissingLeafMass);
    CHECK(code_of({{"a1", 0.0}, {"a2", 0.5}, {"b1", 0.5}, {"b2", 0.5}}) ==
          ErrorCode::NonPositiveMass);
    CHECK(code_of({{"a1", -1.0}, {"a2", 0.5}, {"b1", 0.5}, {"b2", 0.5}}) ==
          ErrorCode::NonPositiveMass);
    CHECK(code_of({{"A", 0.5}, {"a2", 0.5}, {"b1", 0.5}, {"b2", 0.5}}) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of({{"zz", 0.5}, {"a2", 0.5}, {"b1", 0.5}, {"b2", 0.5}}) ==
          ErrorCode::UnknownVertex);
    CHECK(code_of({{"a1", 0.5}, {"a1", 0.5}, {"b1", 0.5}, {"b2", 0.5}}) ==
          ErrorCode::DuplicateId);
}

TEST_CASE("homogeneous splits") {
    SUBCASE("binary") {
        DirectedTree t = binary_fixture();
        auto m = BallMeasure::homogeneous(t, 1.0);
        for (VertexIndex leaf : t.leaves())
            CHECK(m.of(leaf) == doctest::Approx(0.25));
    }
    SUBCASE("ternary star") {
        DirectedTree t = DirectedTree::padic(3, 1);
        auto m = BallMeasure::homogeneous(t, 1.0);
        for (VertexIndex leaf : t.leaves())
            CHECK(m.of(leaf) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("mixed branching") {
        TreeSpec spec;
        spec.children = {{"R", {"A", "B"}}, {"A", {"a1", "a2", "a3"}}, {"B", {"b1", "b2"}}};
        DirectedTree t = DirectedTree::build(spec);
        auto m = BallMeasure::homogeneous(t, 1.0);
        CHECK(m.of(t.index_of("a1")) == doctest::Approx(1.0 / 6.0));
        CHECK(m.of(t.index_of("a3")) == doctest::Approx(1.0 / 6.0));
        CHECK(m.of(t.index_of("b1")) == doctest::Approx(0.25));
    }
    SUBCASE("bad total") {
        CHECK_THROWS_AS(BallMeasure::homogeneous(binary_fixture(), 0.0), Error);
        CHECK_THROWS_AS(BallMeasure::homogeneous(binary_fixture(), -2.0), Error);
    }
}

TEST_CASE("additivity holds on random trees") {
    for (std::uint64_t seed : {21, 22, 23}) {
        TreeSpecDocument doc = generate_random_document(80, seed);
        DirectedTree t = DirectedTree::build(doc.tree);
        auto m = BallMeasure::from_leaf_masses(t, doc.measure.leaf_masses);
        for (VertexIndex v = 0; v < t.vertex_count(); ++v) {
            if (t.is_leaf(v)) continue;
            double sum = 0;
            for (VertexIndex c : t.children(v)) sum += m.of(c);
            CHECK(std::abs(sum - m.of(v)) <= 1e-12 * m.of(v));
        }
        for (VertexIndex v = 0; v < t.vertex_count(); ++v) CHECK(m.of(v) > 0);
    }
}

TEST_CASE("homogeneous unit measure matches standard diameters on p-adic trees") {
    // ball measure equals ball diameter in the homogeneous picture
    for (int p : {2, 3}) {
        DirectedTree t = DirectedTree::padic(p, 3);
        auto m = BallMeasure::homogeneous(t, 1.0);
        auto metric = UltrametricAssignment::standard(t, t.root());
        for (VertexIndex v = 0; v < t.vertex_count(); ++v)
            CHECK(std::abs(m.of(v) - metric.diameter(v)) <= 1e-12);
    }
}

TEST_CASE("measure lookups") {
    DirectedTree t = binary_fixture();
    auto m = BallMeasure::homogeneous(t, 2.0);
    CHECK(m.of(t.index_of("A")) == doctest::Approx(1.0));
    CHECK(m.total() == doctest::Approx(2.0));
    CHECK(m.leaf_mass(t.leaf_rank(t.index_of("b2"))) == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)m.of(99), std::exception);
}
