#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "measure.hpp"
#include "metric.hpp"
#include "pdo.hpp"
#include "tree.hpp"

namespace ultrawave {

/// Parsed form of the JSON tree-spec document, the single interchange
/// format of the CLI. Keys:
///   "root"        required, vertex id
///   "vertices"    required, map id -> list of child ids (leaves may be
///                 omitted; ids appearing only as children are leaves)
///   "leaf_masses" map leaf id -> positive number, or
///   "measure"     {"type": "homogeneous", "total": t} (exactly one of the two)
///   "metric"      optional, {"type": "standard", "reference": id} or
///                 {"type": "table", "diameters": {id: d}}
///   "kernel"      optional, {"type": "table", "values": {id: v}} or
///                 {"type": "power", "alpha": a}
/// Unknown keys anywhere are rejected.
struct KernelSpec {
    enum class Type { table, power };
    Type type = Type::table;
    std::vector<std::pair<std::string, double>> values;
    double alpha = 0;
};

struct MetricSpec {
    enum class Type { standard, table };
    Type type = Type::standard;
    std::optional<std::string> reference;
    std::vector<std::pair<std::string, double>> diameters;
};

struct MeasureSpec {
    bool homogeneous = false;
    double total = 1.0;
    std::vector<std::pair<std::string, double>> leaf_masses;
};

struct TreeSpecDocument {
    std::string root;
    TreeSpec tree;
    MeasureSpec measure;
    std::optional<MetricSpec> metric;
    std::optional<KernelSpec> kernel;
};

/// Throws Error(Parse) on malformed JSON, wrong shapes or unknown keys.
TreeSpecDocument parse_document(const std::string& json_text);

/// Deterministic rendering (sorted keys, lossless numbers); the output
/// re-parses to an equivalent document.
std::string serialize_document(const TreeSpecDocument& doc);

/// Kernel object alone, for --kernel override files.
KernelSpec parse_kernel_spec(const std::string& json_text);

/// Leaf function as a JSON map leaf id -> number; every leaf required.
std::vector<double> parse_leaf_function(const DirectedTree& tree,
                                        const std::string& json_text);

/// A document realized into live objects. The metric is always present
/// (standard assignment rooted at the tree root when the document names
/// none); the kernel only when the document provides one.
struct Instance {
    DirectedTree tree;
    BallMeasure measure;
    UltrametricAssignment metric;
    bool metric_from_document = false;
    std::optional<OperatorKernel> kernel;
};

Instance realize_document(const TreeSpecDocument& doc);

/// Builds a kernel against an already-realized instance (used for
/// overrides). The metric may be null for table kernels; power kernels
/// require one.
OperatorKernel realize_kernel(const DirectedTree& tree, const UltrametricAssignment* metric,
                              const KernelSpec& spec);

/// Complete p-ary tree document with the homogeneous unit measure.
TreeSpecDocument generate_padic_document(int p, int depth);

/// Seeded random tree with branching indices in {2, 3, 4} and random
/// positive leaf masses; same seed, same document, byte for byte.
TreeSpecDocument generate_random_document(int leaves, std::uint64_t seed);

} // namespace ultrawave
