#include <doctest.h>

#include <json.hpp>

#include "driver.hpp"

using namespace ultrawave;
using nlohmann::json;

namespace {

const char* kFixtureDoc = R"({
  "root": "R",
  "vertices": {"R": ["A", "B"], "A": ["a1", "a2"], "B": ["b1", "b2"]},
  "measure": {"type": "homogeneous", "total": 1.0},
  "kernel": {"type": "table", "values": {"R": 1.0, "A": 2.0, "B": 2.0}}
})";

} // namespace

TEST_CASE("validate reports pass on a good document") {
    auto v = driver::validate_document(kFixtureDoc);
    CHECK(v.pass);
    json report = json::parse(v.report_json);
    CHECK(report["pass"] == true);
    CHECK(report["vertices"] == 7);
    CHECK(report["leaves"] == 4);
    CHECK(report["metric"]["exhaustive"] == true);
    CHECK(report["violations"].empty());
}

TEST_CASE("validate reports a branching violation without throwing") {
    auto v = driver::validate_document(R"({
      "root": "R", "vertices": {"R": ["A"], "A": ["x", "y"]},
      "leaf_masses": {"x": 1.0, "y": 1.0}
    })");
    CHECK(!v.pass);
    json report = json::parse(v.report_json);
    REQUIRE(report["violations"].size() == 1);
    std::string msg = report["violations"][0];
    CHECK(msg.find("BranchingIndexOne") != std::string::npos);
}

TEST_CASE("validate reports non-monotone metric tables") {
    auto v = driver::validate_document(R"({
      "root": "R", "vertices": {"R": ["x", "y"]},
      "measure": {"type": "homogeneous", "total": 1.0},
      "metric": {"type": "table", "diameters": {"R": 0.25, "x": 0.5, "y": 0.5}}
    })");
    CHECK(!v.pass);
    json report = json::parse(v.report_json);
    CHECK(report["metric"]["monotone"] == false);
    CHECK(!report["violations"].empty());
}

TEST_CASE("validate propagates parse failures as exceptions") {
    CHECK_THROWS_AS(driver::validate_document("{broken"), Error);
}

TEST_CASE("spectrum output carries the fixture eigenvalues") {
    std::string text = driver::spectrum_json(kFixtureDoc, std::nullopt, false);
    json out = json::parse(text);
    CHECK(out["constant_eigenvalue"] == 0.0);
    CHECK(out["eigenvalues"]["A"] == doctest::Approx(1.5));
    CHECK(out["eigenvalues"]["B"] == doctest::Approx(1.5));
    CHECK(out["eigenvalues"]["R"] == doctest::Approx(1.0));
    CHECK(out["multiplicities"]["A"] == 1);
    CHECK(!out.contains("verification"));
}

TEST_CASE("spectrum with verification embeds a passing report") {
    std::string text = driver::spectrum_json(kFixtureDoc, std::nullopt, true);
    json out = json::parse(text);
    REQUIRE(out.contains("verification"));
    CHECK(out["verification"]["pass"] == true);
    bool saw_diag = false;
    for (const auto& check : out["verification"]["checks"]) {
        if (check["check"] == "diagonalization") {
            saw_diag = true;
            CHECK(check["pass"] == true);
        }
    }
    CHECK(saw_diag);
}

TEST_CASE("spectrum kernel override and missing kernel") {
    std::string no_kernel = R"({
      "root": "R",
      "vertices": {"R": ["A", "B"], "A": ["a1", "a2"], "B": ["b1", "b2"]},
      "measure": {"type": "homogeneous", "total": 1.0}
    })";
    SUBCASE("override supplies the kernel") {
        std::string text = driver::spectrum_json(
            no_kernel, std::string(R"({"type":"table","values":{"R":1.0,"A":2.0,"B":2.0}})"),
            false);
        CHECK(json::parse(text)["eigenvalues"]["A"] == doctest::Approx(1.5));
    }
    SUBCASE("override beats the document kernel") {
        std::string text = driver::spectrum_json(
            kFixtureDoc, std::string(R"({"type":"table","values":{"R":0.0,"A":0.0,"B":0.0}})"),
            false);
        CHECK(json::parse(text)["eigenvalues"]["A"] == doctest::Approx(0.0));
    }
    SUBCASE("no kernel anywhere") {
        try {
            driver::spectrum_json(no_kernel, std::nullopt, false);
            FAIL("expected MissingKernel");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MissingKernel);
        }
    }
}

TEST_CASE("wavelets output lists the fixture basis") {
    std::string text = driver::wavelets_json(kFixtureDoc);
    json out = json::parse(text);
    CHECK(out["basis_size"] == 4);
    CHECK(out["constant_value"] == doctest::Approx(1.0));
    CHECK(out["gram_residual"].get<double>() < 1e-9);
    REQUIRE(out["wavelets"].size() == 3);
    // ordered by owner id: A, B, R
    CHECK(out["wavelets"][0]["owner"] == "A");
    CHECK(out["wavelets"][1]["owner"] == "B");
    CHECK(out["wavelets"][2]["owner"] == "R");
    CHECK(out["wavelets"][2]["child_values"]["A"] == doctest::Approx(1.0));
    CHECK(out["wavelets"][2]["child_values"]["B"] == doctest::Approx(-1.0));
    CHECK(out["wavelets"][0]["child_values"]["a1"] ==
          doctest::Approx(1.4142135623730951));
    CHECK(out["wavelets"][0]["child_values"]["a2"] ==
          doctest::Approx(-1.4142135623730951));
}

TEST_CASE("uneven two-leaf wavelet values appear in the output") {
    std::string text = driver::wavelets_json(R"({
      "root": "R", "vertices": {"R": ["x", "y"]},
      "leaf_masses": {"x": 0.75, "y": 0.25}
    })");
    json out = json::parse(text);
    CHECK(out["wavelets"][0]["child_values"]["x"] ==
          doctest::Approx(0.57735026918962576));
    CHECK(out["wavelets"][0]["child_values"]["y"] ==
          doctest::Approx(-1.7320508075688772));
}

TEST_CASE("metric export is a bare id-to-diameter map") {
    json out = json::parse(driver::metric_json(kFixtureDoc));
    CHECK(out.size() == 7);
    CHECK(out["R"] == doctest::Approx(1.0));
    CHECK(out["A"] == doctest::Approx(0.5));
    CHECK(out["a1"] == doctest::Approx(0.25));
}

TEST_CASE("diffusion CSV") {
    std::string f = R"({"a1": 1.0, "a2": 0.0, "b1": 0.0, "b2": 0.0})";
    std::vector<double> times{0.0, 1.0, 1e6};
    auto d = driver::diffuse_csv(kFixtureDoc, f, times);
    CHECK(!d.negative_eigenvalues);

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < d.csv.size()) {
        std::size_t end = d.csv.find('\n', start);
        lines.push_back(d.csv.substr(start, end - start));
        start = end + 1;
    }
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "t,a1,a2,b1,b2,deviation");
    // t = 0 row reproduces the input
    CHECK(lines[1].rfind("0,1,", 0) == 0);
    // large-t row is the weighted mean 0.25 with ~zero deviation
    CHECK(lines[3].find(",0.25,0.25,0.25,0.25,") != std::string::npos);

    SUBCASE("kernel is required") {
        std::string no_kernel = R"({
          "root": "R",
          "vertices": {"R": ["A", "B"], "A": ["a1", "a2"], "B": ["b1", "b2"]},
          "measure": {"type": "homogeneous", "total": 1.0}
        })";
        CHECK_THROWS_AS(driver::diffuse_csv(no_kernel, f, times), Error);
    }
    SUBCASE("bad function file") {
        CHECK_THROWS_AS(driver::diffuse_csv(kFixtureDoc, R"({"a1": 1.0})", times), Error);
    }
}

TEST_CASE("verify document runs the full battery") {
    auto v = driver::verify_document(kFixtureDoc);
    CHECK(v.pass);
    json report = json::parse(v.report_json);
    CHECK(report["pass"] == true);
    CHECK(report["checks"].size() == 7);
    for (const auto& check : report["checks"]) CHECK(check["pass"] == true);
}

TEST_CASE("verify without kernel skips the operator checks") {
    auto v = driver::verify_document(R"({
      "root": "R", "vertices": {"R": ["x", "y"]},
      "leaf_masses": {"x": 0.75, "y": 0.25}
    })");
    CHECK(v.pass);
    json report = json::parse(v.report_json);
    int skipped = 0;
    for (const auto& check : report["checks"])
        if (check.contains("skipped") && check["skipped"] == true) ++skipped;
    CHECK(skipped == 5);
}

TEST_CASE("generated documents round-trip through the drivers") {
    std::string spec = driver::generate_random_json(32, 4);
    CHECK(driver::validate_document(spec).pass);
    std::string spec2 = driver::generate_random_json(32, 4);
    CHECK(spec == spec2);

    std::string padic = driver::generate_padic_json(3, 1);
    json doc = json::parse(padic);
    CHECK(doc["vertices"]["R"].size() == 3);
    CHECK(driver::validate_document(padic).pass);
}
