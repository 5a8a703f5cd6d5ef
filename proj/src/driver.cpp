#include "driver.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "oracle.hpp"
#include "wavelets.hpp"

namespace ultrawave::driver {

namespace {

using nlohmann::json;

json report_to_json(const CheckReport& r) {
    json out{{"check", r.check},
             {"pass", r.pass},
             {"worst_residual", r.worst_residual},
             {"witness", r.witness}};
    if (r.skipped) out["skipped"] = true;
    return out;
}

json run_oracle_checks(const Instance& inst, bool& all_pass) {
    const DirectedTree& tree = inst.tree;
    const BallMeasure& measure = inst.measure;
    WaveletBasis basis = WaveletBasis::build(tree, measure);

    std::vector<CheckReport> checks;
    checks.push_back(verify_gram(tree, measure, basis));
    checks.push_back(verify_parseval(tree, measure, basis));
    if (inst.kernel) {
        const OperatorKernel& kernel = *inst.kernel;
        DenseOperator dense = dense_operator(tree, measure, kernel);
        checks.push_back(verify_kills_constants(dense));
        checks.push_back(verify_selfadjoint(dense));
        checks.push_back(verify_diagonalization(tree, measure, kernel, basis));
        checks.push_back(verify_eigenvalue_multiset(tree, measure, kernel, dense));
        checks.push_back(verify_apply_agreement(tree, measure, kernel, basis, dense));
    } else {
        for (const char* name : {"kills_constants", "selfadjoint", "diagonalization",
                                 "eigenvalue_multiset", "apply_agreement"}) {
            CheckReport r;
            r.check = name;
            r.pass = true;
            r.skipped = true;
            r.witness = "no kernel in document";
            checks.push_back(r);
        }
    }

    all_pass = true;
    json arr = json::array();
    for (const auto& r : checks) {
        if (!r.skipped && !r.pass) all_pass = false;
        arr.push_back(report_to_json(r));
    }
    return arr;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

} // namespace

Validation validate_document(const std::string& spec_json) {
    TreeSpecDocument doc = parse_document(spec_json);  // Parse errors propagate

    json report;
    std::vector<std::string> violations;
    try {
        Instance inst = realize_document(doc);
        report["vertices"] = inst.tree.vertex_count();
        report["leaves"] = inst.tree.leaf_count();
        report["total_measure"] = inst.measure.total();

        // additivity sweep (the construction guarantees it; verify anyway)
        for (VertexIndex v = 0; v < inst.tree.vertex_count(); ++v) {
            auto cs = inst.tree.children(v);
            if (cs.empty()) continue;
            double sum = 0;
            for (VertexIndex c : cs) sum += inst.measure.of(c);
            if (std::abs(sum - inst.measure.of(v)) > 1e-12 * inst.measure.of(v))
                violations.push_back("measure not additive at '" + inst.tree.name(v) + "'");
        }

        MetricReport metric = verify_ultrametric(inst.tree, inst.metric);
        report["metric"] = {{"monotone", metric.monotone},
                            {"strong_triangle", metric.strong_triangle},
                            {"triples_checked", metric.triples_checked},
                            {"exhaustive", metric.exhaustive}};
        if (!metric.monotone)
            violations.push_back("NotMonotone: " + metric.monotone_witness);
        if (!metric.strong_triangle)
            violations.push_back(
                "strong triangle inequality fails at ('" +
                inst.tree.name(metric.counterexample.a) + "', '" +
                inst.tree.name(metric.counterexample.b) + "', '" +
                inst.tree.name(metric.counterexample.c) + "')");
    } catch (const Error& e) {
        violations.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
    }

    Validation out;
    out.pass = violations.empty();
    report["pass"] = out.pass;
    report["violations"] = violations;
    out.report_json = report.dump(2) + "\n";
    return out;
}

namespace {
json spectrum_to_json(const DirectedTree& tree, const Spectrum& spectrum) {
    json eigenvalues = json::object();
    json multiplicities = json::object();
    for (VertexIndex v : tree.internal_by_name()) {
        Complex lambda = spectrum.eigenvalue(v);
        const std::string& id = tree.name(v);
        if (spectrum.is_real())
            eigenvalues[id] = lambda.real();
        else
            eigenvalues[id] = {{"re", lambda.real()}, {"im", lambda.imag()}};
        multiplicities[id] = tree.branching_index(v) - 1;
    }
    return json{{"constant_eigenvalue", 0.0},
                {"eigenvalues", eigenvalues},
                {"multiplicities", multiplicities}};
}

json basis_to_json(const DirectedTree& tree, const WaveletBasis& basis) {
    json list = json::array();
    for (std::size_t k = 0; k < basis.wavelet_count(); ++k) {
        const Wavelet& w = basis.wavelet(k);
        auto cs = tree.children(w.owner);
        json values = json::object();
        for (std::size_t j = 0; j < cs.size(); ++j)
            values[tree.name(cs[j])] = w.child_values[j];
        list.push_back({{"owner", tree.name(w.owner)},
                        {"index", w.index},
                        {"child_values", values}});
    }
    return json{{"basis_size", basis.size()},
                {"constant_value", basis.constant_value()},
                {"wavelets", list}};
}
} // namespace

std::string spectrum_json(const std::string& spec_json,
                          const std::optional<std::string>& kernel_json, bool verify) {
    Instance inst = realize_document(parse_document(spec_json));
    if (kernel_json)
        inst.kernel = realize_kernel(inst.tree, &inst.metric, parse_kernel_spec(*kernel_json));
    if (!inst.kernel)
        fail(ErrorCode::MissingKernel,
             "document has no kernel and no override was given");

    Spectrum spectrum = Spectrum::compute(inst.tree, inst.measure, *inst.kernel);
    json out = spectrum_to_json(inst.tree, spectrum);
    if (verify) {
        bool all_pass = false;
        out["verification"] = {{"checks", run_oracle_checks(inst, all_pass)},
                               {"pass", all_pass}};
    }
    return out.dump(2) + "\n";
}

std::string wavelets_json(const std::string& spec_json) {
    Instance inst = realize_document(parse_document(spec_json));
    WaveletBasis basis = WaveletBasis::build(inst.tree, inst.measure);
    json out = basis_to_json(inst.tree, basis);
    out["gram_residual"] = verify_gram(inst.tree, inst.measure, basis).worst_residual;
    return out.dump(2) + "\n";
}

std::string metric_json(const std::string& spec_json) {
    Instance inst = realize_document(parse_document(spec_json));
    json out = json::object();
    for (VertexIndex v = 0; v < inst.tree.vertex_count(); ++v)
        out[inst.tree.name(v)] = inst.metric.diameter(v);
    return out.dump(2) + "\n";
}

Diffusion diffuse_csv(const std::string& spec_json, const std::string& f_json,
                      std::span<const double> times) {
    Instance inst = realize_document(parse_document(spec_json));
    if (!inst.kernel)
        fail(ErrorCode::MissingKernel, "diffusion requires a kernel in the document");
    std::vector<double> f = parse_leaf_function(inst.tree, f_json);
    WaveletBasis basis = WaveletBasis::build(inst.tree, inst.measure);
    Spectrum spectrum = Spectrum::compute(inst.tree, inst.measure, *inst.kernel);

    const std::size_t n = inst.tree.leaf_count();
    double mean = 0;
    for (std::size_t r = 0; r < n; ++r) mean += f[r] * inst.measure.leaf_mass(r);
    mean /= inst.measure.total();

    std::string csv = "t";
    for (VertexIndex leaf : inst.tree.leaves())
        csv += "," + csv_field(inst.tree.name(leaf));
    csv += ",deviation\n";

    std::vector<Complex> fc = to_complex(f);
    for (double t : times) {
        std::vector<Complex> ft =
            heat_apply(inst.tree, inst.measure, *inst.kernel, basis, fc, t);
        double dev2 = 0;
        for (std::size_t r = 0; r < n; ++r)
            dev2 += std::norm(ft[r] - mean) * inst.measure.leaf_mass(r);
        csv += format_number(t);
        for (std::size_t r = 0; r < n; ++r) csv += "," + format_number(ft[r].real());
        csv += "," + format_number(std::sqrt(dev2));
        csv += "\n";
    }

    Diffusion out;
    out.csv = std::move(csv);
    out.negative_eigenvalues =
        !spectrum.is_real() || spectrum.has_negative_real_part();
    return out;
}

Verification verify_document(const std::string& spec_json) {
    Instance inst = realize_document(parse_document(spec_json));
    Verification out;
    json checks = run_oracle_checks(inst, out.pass);
    json report{{"pass", out.pass}, {"checks", checks}};
    out.report_json = report.dump(2) + "\n";
    return out;
}

std::string generate_padic_json(int p, int depth) {
    return serialize_document(generate_padic_document(p, depth));
}

std::string generate_random_json(int leaves, std::uint64_t seed) {
    return serialize_document(generate_random_document(leaves, seed));
}

std::string render_measure(const DirectedTree& tree, const BallMeasure& measure) {
    json out = json::object();
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v)
        out[tree.name(v)] = measure.of(v);
    return out.dump(2) + "\n";
}

std::string render_spectrum(const DirectedTree& tree, const Spectrum& spectrum) {
    return spectrum_to_json(tree, spectrum).dump(2) + "\n";
}

std::string render_basis(const DirectedTree& tree, const BallMeasure& measure,
                         const WaveletBasis& basis, bool include_gram_residual) {
    json out = basis_to_json(tree, basis);
    if (include_gram_residual)
        out["gram_residual"] = verify_gram(tree, measure, basis).worst_residual;
    return out.dump(2) + "\n";
}

std::string render_metric_report(const DirectedTree& tree, const MetricReport& report) {
    json out{{"pass", report.pass()},
             {"monotone", report.monotone},
             {"strong_triangle", report.strong_triangle},
             {"triples_checked", report.triples_checked},
             {"exhaustive", report.exhaustive}};
    if (!report.monotone) out["monotone_witness"] = report.monotone_witness;
    if (!report.strong_triangle)
        out["counterexample"] = {tree.name(report.counterexample.a),
                                 tree.name(report.counterexample.b),
                                 tree.name(report.counterexample.c)};
    return out.dump(2) + "\n";
}

} // namespace ultrawave::driver
