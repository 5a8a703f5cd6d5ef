#include "treespec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

namespace ultrawave {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& message) {
    fail(ErrorCode::Parse, message);
}

void require_keys(const json& obj, const char* where, std::set<std::string> allowed) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            parse_fail(std::string("unknown key '") + key + "' in " + where);
}

const json& require(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end())
        parse_fail(std::string("missing key '") + key + "' in " + where);
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) parse_fail("expected a number for " + where);
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) parse_fail("expected a string for " + where);
    return v.get<std::string>();
}

std::vector<std::pair<std::string, double>> as_number_map(const json& v,
                                                          const std::string& where) {
    if (!v.is_object()) parse_fail("expected an object for " + where);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(v.size());
    for (const auto& [key, val] : v.items())
        out.emplace_back(key, as_number(val, where + "['" + key + "']"));
    return out;
}

KernelSpec parse_kernel_object(const json& k) {
    if (!k.is_object()) parse_fail("expected an object for 'kernel'");
    KernelSpec spec;
    std::string type = as_string(require(k, "type", "kernel"), "kernel type");
    if (type == "table") {
        require_keys(k, "kernel", {"type", "values"});
        spec.type = KernelSpec::Type::table;
        spec.values = as_number_map(require(k, "values", "kernel"), "kernel values");
    } else if (type == "power") {
        require_keys(k, "kernel", {"type", "alpha"});
        spec.type = KernelSpec::Type::power;
        spec.alpha = as_number(require(k, "alpha", "kernel"), "kernel alpha");
    } else {
        parse_fail("kernel type must be 'table' or 'power', got '" + type + "'");
    }
    return spec;
}

} // namespace

TreeSpecDocument parse_document(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
    if (!doc.is_object()) parse_fail("document must be a JSON object");
    require_keys(doc, "document",
                 {"root", "vertices", "leaf_masses", "measure", "metric", "kernel"});

    TreeSpecDocument out;
    out.root = as_string(require(doc, "root", "document"), "root");

    const json& vertices = require(doc, "vertices", "document");
    if (!vertices.is_object()) parse_fail("'vertices' must be an object");
    bool root_listed = false;
    for (const auto& [id, kids] : vertices.items()) {
        if (!kids.is_array()) parse_fail("children of '" + id + "' must be an array");
        std::vector<std::string> cs;
        cs.reserve(kids.size());
        for (const auto& c : kids)
            cs.push_back(as_string(c, "child of '" + id + "'"));
        root_listed = root_listed || id == out.root;
        out.tree.children.emplace_back(id, std::move(cs));
    }
    if (!root_listed) out.tree.children.emplace_back(out.root, std::vector<std::string>{});

    bool has_masses = doc.contains("leaf_masses");
    bool has_measure = doc.contains("measure");
    if (has_masses == has_measure)
        parse_fail("exactly one of 'leaf_masses' and 'measure' is required");
    if (has_masses) {
        out.measure.homogeneous = false;
        out.measure.leaf_masses = as_number_map(doc["leaf_masses"], "leaf_masses");
    } else {
        const json& m = doc["measure"];
        if (!m.is_object()) parse_fail("'measure' must be an object");
        require_keys(m, "measure", {"type", "total"});
        if (as_string(require(m, "type", "measure"), "measure type") != "homogeneous")
            parse_fail("measure type must be 'homogeneous'");
        out.measure.homogeneous = true;
        out.measure.total = as_number(require(m, "total", "measure"), "measure total");
    }

    if (doc.contains("metric")) {
        const json& m = doc["metric"];
        if (!m.is_object()) parse_fail("'metric' must be an object");
        MetricSpec spec;
        std::string type = as_string(require(m, "type", "metric"), "metric type");
        if (type == "standard") {
            require_keys(m, "metric", {"type", "reference"});
            spec.type = MetricSpec::Type::standard;
            if (m.contains("reference"))
                spec.reference = as_string(m["reference"], "metric reference");
        } else if (type == "table") {
            require_keys(m, "metric", {"type", "diameters"});
            spec.type = MetricSpec::Type::table;
            spec.diameters = as_number_map(require(m, "diameters", "metric"), "diameters");
        } else {
            parse_fail("metric type must be 'standard' or 'table', got '" + type + "'");
        }
        out.metric = std::move(spec);
    }

    if (doc.contains("kernel")) out.kernel = parse_kernel_object(doc["kernel"]);
    return out;
}

KernelSpec parse_kernel_spec(const std::string& json_text) {
    json k;
    try {
        k = json::parse(json_text);
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
    return parse_kernel_object(k);
}

std::string serialize_document(const TreeSpecDocument& doc) {
    json vertices = json::object();
    for (const auto& [id, kids] : doc.tree.children) {
        if (kids.empty() && id != doc.root) continue;  // leaves stay implicit
        std::vector<std::string> cs = kids;
        std::sort(cs.begin(), cs.end());
        vertices[id] = cs;
    }
    json out{{"root", doc.root}, {"vertices", vertices}};
    if (doc.measure.homogeneous) {
        out["measure"] = {{"type", "homogeneous"}, {"total", doc.measure.total}};
    } else {
        json masses = json::object();
        for (const auto& [id, m] : doc.measure.leaf_masses) masses[id] = m;
        out["leaf_masses"] = masses;
    }
    if (doc.metric) {
        if (doc.metric->type == MetricSpec::Type::standard) {
            json m{{"type", "standard"}};
            if (doc.metric->reference) m["reference"] = *doc.metric->reference;
            out["metric"] = m;
        } else {
            json d = json::object();
            for (const auto& [id, v] : doc.metric->diameters) d[id] = v;
            out["metric"] = {{"type", "table"}, {"diameters", d}};
        }
    }
    if (doc.kernel) {
        if (doc.kernel->type == KernelSpec::Type::table) {
            json v = json::object();
            for (const auto& [id, t] : doc.kernel->values) v[id] = t;
            out["kernel"] = {{"type", "table"}, {"values", v}};
        } else {
            out["kernel"] = {{"type", "power"}, {"alpha", doc.kernel->alpha}};
        }
    }
    return out.dump(2) + "\n";
}

std::vector<double> parse_leaf_function(const DirectedTree& tree,
                                        const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
    if (!doc.is_object()) parse_fail("leaf function must be a JSON object");
    std::vector<double> f(tree.leaf_count(), std::nan(""));
    for (const auto& [id, val] : doc.items()) {
        VertexIndex v = tree.index_of(id);
        if (!tree.is_leaf(v))
            fail(ErrorCode::InvalidArgument,
                 "function value given at internal vertex '" + id + "'");
        f[tree.leaf_rank(v)] = as_number(val, "value at '" + id + "'");
    }
    for (std::size_t r = 0; r < f.size(); ++r)
        if (std::isnan(f[r]))
            fail(ErrorCode::InvalidArgument,
                 "no function value for leaf '" + tree.name(tree.leaves()[r]) + "'");
    return f;
}

OperatorKernel realize_kernel(const DirectedTree& tree, const UltrametricAssignment* metric,
                              const KernelSpec& spec) {
    if (spec.type == KernelSpec::Type::power) {
        if (!metric)
            fail(ErrorCode::InvalidArgument, "power kernel requires a metric");
        return OperatorKernel::power(tree, *metric, spec.alpha);
    }

    std::vector<Complex> values(tree.vertex_count(), 0.0);
    std::vector<char> seen(tree.vertex_count(), 0);
    for (const auto& [id, v] : spec.values) {
        VertexIndex i = tree.index_of(id);
        if (!tree.is_internal(i))
            fail(ErrorCode::InvalidArgument, "kernel value at leaf '" + id + "'");
        if (seen[i])
            fail(ErrorCode::DuplicateId, "kernel value for '" + id + "' given twice");
        seen[i] = 1;
        values[i] = v;
    }
    for (VertexIndex i = 0; i < tree.vertex_count(); ++i)
        if (tree.is_internal(i) && !seen[i])
            fail(ErrorCode::InvalidArgument,
                 "kernel table does not cover internal vertex '" + tree.name(i) + "'");
    return OperatorKernel::from_table(tree, std::move(values));
}

Instance realize_document(const TreeSpecDocument& doc) {
    DirectedTree tree = DirectedTree::build(doc.tree);
    if (tree.name(tree.root()) != doc.root)
        fail(ErrorCode::InvalidArgument, "declared root '" + doc.root +
                                             "' but the parentless vertex is '" +
                                             tree.name(tree.root()) + "'");

    BallMeasure measure =
        doc.measure.homogeneous
            ? BallMeasure::homogeneous(tree, doc.measure.total)
            : BallMeasure::from_leaf_masses(tree, doc.measure.leaf_masses);

    std::optional<UltrametricAssignment> metric;
    if (doc.metric) {
        if (doc.metric->type == MetricSpec::Type::standard) {
            VertexIndex ref = doc.metric->reference ? tree.index_of(*doc.metric->reference)
                                                    : tree.root();
            metric = UltrametricAssignment::standard(tree, ref);
        } else {
            std::vector<double> d(tree.vertex_count(), std::nan(""));
            for (const auto& [id, v] : doc.metric->diameters) {
                VertexIndex i = tree.index_of(id);
                if (!std::isnan(d[i]))
                    fail(ErrorCode::DuplicateId, "diameter for '" + id + "' given twice");
                d[i] = v;
            }
            for (VertexIndex i = 0; i < tree.vertex_count(); ++i)
                if (std::isnan(d[i]))
                    fail(ErrorCode::InvalidArgument,
                         "diameter table does not cover vertex '" + tree.name(i) + "'");
            metric = UltrametricAssignment::from_table(tree, std::move(d), tree.root());
        }
    } else {
        metric = UltrametricAssignment::standard(tree, tree.root());
    }

    std::optional<OperatorKernel> kernel;
    if (doc.kernel) kernel = realize_kernel(tree, &*metric, *doc.kernel);
    return Instance{std::move(tree), std::move(measure), std::move(*metric),
                    doc.metric.has_value(), std::move(kernel)};
}

TreeSpecDocument generate_padic_document(int p, int depth) {
    if (p < 2)
        fail(ErrorCode::InvalidArgument, "p must be >= 2, got " + std::to_string(p));
    if (depth < 1)
        fail(ErrorCode::InvalidArgument, "depth must be >= 1, got " + std::to_string(depth));
    DirectedTree tree = DirectedTree::padic(p, depth);
    TreeSpecDocument doc;
    doc.root = tree.name(tree.root());
    for (VertexIndex v = 0; v < tree.vertex_count(); ++v) {
        if (tree.is_leaf(v)) continue;
        std::vector<std::string> kids;
        for (VertexIndex c : tree.children(v)) kids.push_back(tree.name(c));
        doc.tree.children.emplace_back(tree.name(v), std::move(kids));
    }
    doc.measure.homogeneous = true;
    doc.measure.total = 1.0;
    return doc;
}

TreeSpecDocument generate_random_document(int leaves, std::uint64_t seed) {
    if (leaves < 2)
        fail(ErrorCode::InvalidArgument,
             "leaf count must be >= 2, got " + std::to_string(leaves));

    // mt19937_64 is bit-exact everywhere; avoid std distributions, whose
    // output is implementation-defined
    std::mt19937_64 rng(seed);
    auto below = [&](std::uint64_t n) { return rng() % n; };
    auto unit = [&] { return (rng() >> 11) * 0x1.0p-53; };

    struct Node {
        std::string name;
        std::vector<std::size_t> kids;
    };
    std::vector<Node> nodes{{"R", {}}};
    std::vector<std::size_t> frontier{0};
    std::size_t head = 0;
    int leaf_count = 1;
    while (leaf_count < leaves) {
        std::size_t v = frontier[head++];
        int cap = std::min(4, leaves - leaf_count + 1);
        int k = 2 + static_cast<int>(below(static_cast<std::uint64_t>(cap - 1)));
        for (int j = 0; j < k; ++j) {
            nodes.push_back({nodes[v].name + "." + std::to_string(j), {}});
            nodes[v].kids.push_back(nodes.size() - 1);
            frontier.push_back(nodes.size() - 1);
        }
        leaf_count += k - 1;
    }

    TreeSpecDocument doc;
    doc.root = "R";
    std::vector<std::pair<std::string, double>> masses;
    for (const auto& node : nodes) {
        if (node.kids.empty()) continue;
        std::vector<std::string> kids;
        for (std::size_t c : node.kids) kids.push_back(nodes[c].name);
        doc.tree.children.emplace_back(node.name, std::move(kids));
    }
    // deterministic mass order: sorted leaf names, matching canonical order
    std::vector<std::string> leaf_names;
    for (const auto& node : nodes)
        if (node.kids.empty()) leaf_names.push_back(node.name);
    std::sort(leaf_names.begin(), leaf_names.end());
    for (const auto& name : leaf_names)
        masses.emplace_back(name, 0.25 + 0.75 * unit());
    doc.measure.leaf_masses = std::move(masses);
    return doc;
}

} // namespace ultrawave
