#include "ultrawave/ultrawave.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "driver.hpp"
#include "measure.hpp"
#include "metric.hpp"
#include "oracle.hpp"
#include "pdo.hpp"
#include "tree.hpp"
#include "treespec.hpp"
#include "wavelets.hpp"

using namespace ultrawave;

struct uw_tree {
    std::shared_ptr<const DirectedTree> impl;
};
struct uw_measure {
    std::shared_ptr<const DirectedTree> tree;
    std::shared_ptr<const BallMeasure> impl;
};
struct uw_metric {
    std::shared_ptr<const DirectedTree> tree;
    std::shared_ptr<const UltrametricAssignment> impl;
};
struct uw_kernel {
    std::shared_ptr<const DirectedTree> tree;
    std::shared_ptr<const OperatorKernel> impl;
};
struct uw_basis {
    std::shared_ptr<const DirectedTree> tree;
    std::shared_ptr<const BallMeasure> measure;
    std::shared_ptr<const WaveletBasis> impl;
};
struct uw_spectrum {
    std::shared_ptr<const DirectedTree> tree;
    std::shared_ptr<const Spectrum> impl;
};

namespace {

thread_local std::string t_last_error;

uw_status map_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return UW_ERR_INVALID_ARGUMENT;
        case ErrorCode::Parse: return UW_ERR_PARSE;
        case ErrorCode::DuplicateId: return UW_ERR_DUPLICATE_ID;
        case ErrorCode::CycleDetected: return UW_ERR_CYCLE;
        case ErrorCode::Disconnected: return UW_ERR_DISCONNECTED;
        case ErrorCode::BranchingIndexOne: return UW_ERR_BRANCHING_INDEX_ONE;
        case ErrorCode::RootDegenerate: return UW_ERR_ROOT_DEGENERATE;
        case ErrorCode::UnknownVertex: return UW_ERR_UNKNOWN_VERTEX;
        case ErrorCode::NotComparable: return UW_ERR_NOT_COMPARABLE;
        case ErrorCode::NotStrictAncestor: return UW_ERR_NOT_STRICT_ANCESTOR;
        case ErrorCode::MissingLeafMass: return UW_ERR_MISSING_LEAF_MASS;
        case ErrorCode::NonPositiveMass: return UW_ERR_NON_POSITIVE_MASS;
        case ErrorCode::NotInternalVertex: return UW_ERR_NOT_INTERNAL_VERTEX;
        case ErrorCode::NotMonotone: return UW_ERR_NOT_MONOTONE;
        case ErrorCode::DimensionMismatch: return UW_ERR_DIMENSION_MISMATCH;
        case ErrorCode::MissingKernel: return UW_ERR_MISSING_KERNEL;
        case ErrorCode::TooLarge: return UW_ERR_TOO_LARGE;
        case ErrorCode::Io: return UW_ERR_IO;
    }
    return UW_ERR_INTERNAL;
}

template <typename Fn>
uw_status wrap(Fn&& fn) {
    t_last_error.clear();
    try {
        return fn();
    } catch (const Error& e) {
        t_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return UW_ERR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown failure";
        return UW_ERR_INTERNAL;
    }
}

uw_status require_args(std::initializer_list<const void*> args) {
    for (const void* a : args)
        if (a == nullptr) {
            t_last_error = "null argument";
            return UW_ERR_INVALID_ARGUMENT;
        }
    return UW_OK;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::pair<std::string, double>> zip_pairs(const char* const* ids,
                                                      const double* values, size_t count) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        if (ids[i] == nullptr) fail(ErrorCode::InvalidArgument, "null id");
        out.emplace_back(ids[i], values[i]);
    }
    return out;
}

void require_same_tree(const std::shared_ptr<const DirectedTree>& a,
                       const std::shared_ptr<const DirectedTree>& b) {
    if (a != b)
        fail(ErrorCode::InvalidArgument, "handles belong to different trees");
}

} // namespace

extern "C" {

const char* uw_version(void) { return "0.1.0"; }

const char* uw_status_name(uw_status status) {
    switch (status) {
        case UW_OK: return "OK";
        case UW_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case UW_ERR_PARSE: return "Parse";
        case UW_ERR_DUPLICATE_ID: return "DuplicateId";
        case UW_ERR_CYCLE: return "CycleDetected";
        case UW_ERR_DISCONNECTED: return "Disconnected";
        case UW_ERR_BRANCHING_INDEX_ONE: return "BranchingIndexOne";
        case UW_ERR_ROOT_DEGENERATE: return "RootDegenerate";
        case UW_ERR_UNKNOWN_VERTEX: return "UnknownVertex";
        case UW_ERR_NOT_COMPARABLE: return "NotComparable";
        case UW_ERR_NOT_STRICT_ANCESTOR: return "NotStrictAncestor";
        case UW_ERR_MISSING_LEAF_MASS: return "MissingLeafMass";
        case UW_ERR_NON_POSITIVE_MASS: return "NonPositiveMass";
        case UW_ERR_NOT_INTERNAL_VERTEX: return "NotInternalVertex";
        case UW_ERR_NOT_MONOTONE: return "NotMonotone";
        case UW_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case UW_ERR_MISSING_KERNEL: return "MissingKernel";
        case UW_ERR_TOO_LARGE: return "TooLarge";
        case UW_ERR_IO: return "Io";
        case UW_ERR_VERIFICATION_FAILED: return "VerificationFailed";
        case UW_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* uw_last_error(void) { return t_last_error.c_str(); }

void uw_string_free(char* s) { std::free(s); }

/* ---------- trees ---------- */

uw_status uw_tree_from_json(const char* spec_json, uw_tree** out) {
    if (auto s = require_args({spec_json, out})) return s;
    return wrap([&] {
        TreeSpecDocument doc = parse_document(spec_json);
        auto tree = std::make_shared<DirectedTree>(DirectedTree::build(doc.tree));
        if (tree->name(tree->root()) != doc.root)
            fail(ErrorCode::InvalidArgument,
                 "declared root '" + doc.root + "' but the parentless vertex is '" +
                     tree->name(tree->root()) + "'");
        *out = new uw_tree{std::move(tree)};
        return UW_OK;
    });
}

uw_status uw_tree_padic(int p, int depth, uw_tree** out) {
    if (auto s = require_args({out})) return s;
    return wrap([&] {
        *out = new uw_tree{std::make_shared<DirectedTree>(DirectedTree::padic(p, depth))};
        return UW_OK;
    });
}

void uw_tree_free(uw_tree* tree) { delete tree; }

size_t uw_tree_vertex_count(const uw_tree* tree) {
    return tree ? tree->impl->vertex_count() : 0;
}

size_t uw_tree_leaf_count(const uw_tree* tree) {
    return tree ? tree->impl->leaf_count() : 0;
}

const char* uw_tree_vertex_name(const uw_tree* tree, size_t index) {
    if (!tree || index >= tree->impl->vertex_count()) return nullptr;
    return tree->impl->name(static_cast<VertexIndex>(index)).c_str();
}

const char* uw_tree_leaf_name(const uw_tree* tree, size_t leaf_index) {
    if (!tree || leaf_index >= tree->impl->leaf_count()) return nullptr;
    return tree->impl->name(tree->impl->leaves()[leaf_index]).c_str();
}

const char* uw_tree_root(const uw_tree* tree) {
    return tree ? tree->impl->name(tree->impl->root()).c_str() : nullptr;
}

int uw_tree_is_leaf(const uw_tree* tree, const char* id) {
    if (!tree || !id) return -1;
    auto v = tree->impl->find(id);
    if (!v) return -1;
    return tree->impl->is_leaf(*v) ? 1 : 0;
}

uw_status uw_tree_branching_index(const uw_tree* tree, const char* id, size_t* out) {
    if (auto s = require_args({tree, id, out})) return s;
    return wrap([&] {
        *out = tree->impl->branching_index(tree->impl->index_of(id));
        return UW_OK;
    });
}

uw_status uw_tree_sup(const uw_tree* tree, const char* a, const char* b,
                      const char** out) {
    if (auto s = require_args({tree, a, b, out})) return s;
    return wrap([&] {
        const DirectedTree& t = *tree->impl;
        *out = t.name(t.sup(t.index_of(a), t.index_of(b))).c_str();
        return UW_OK;
    });
}

uw_status uw_tree_child_toward(const uw_tree* tree, const char* ancestor,
                               const char* descendant, const char** out) {
    if (auto s = require_args({tree, ancestor, descendant, out})) return s;
    return wrap([&] {
        const DirectedTree& t = *tree->impl;
        *out = t.name(t.child_toward(t.index_of(ancestor), t.index_of(descendant))).c_str();
        return UW_OK;
    });
}

/* ---------- ball measures ---------- */

uw_status uw_measure_homogeneous(const uw_tree* tree, double total, uw_measure** out) {
    if (auto s = require_args({tree, out})) return s;
    return wrap([&] {
        *out = new uw_measure{
            tree->impl,
            std::make_shared<BallMeasure>(BallMeasure::homogeneous(*tree->impl, total))};
        return UW_OK;
    });
}

uw_status uw_measure_from_masses(const uw_tree* tree, const char* const* leaf_ids,
                                 const double* masses, size_t count, uw_measure** out) {
    if (auto s = require_args({tree, leaf_ids, masses, out})) return s;
    return wrap([&] {
        *out = new uw_measure{tree->impl,
                              std::make_shared<BallMeasure>(BallMeasure::from_leaf_masses(
                                  *tree->impl, zip_pairs(leaf_ids, masses, count)))};
        return UW_OK;
    });
}

void uw_measure_free(uw_measure* measure) { delete measure; }

uw_status uw_measure_of(const uw_measure* measure, const char* id, double* out) {
    if (auto s = require_args({measure, id, out})) return s;
    return wrap([&] {
        *out = measure->impl->of(measure->tree->index_of(id));
        return UW_OK;
    });
}

double uw_measure_total(const uw_measure* measure) {
    return measure ? measure->impl->total() : 0.0;
}

uw_status uw_measure_to_json(const uw_measure* measure, char** json) {
    if (auto s = require_args({measure, json})) return s;
    return wrap([&] {
        *json = dup_string(driver::render_measure(*measure->tree, *measure->impl));
        return UW_OK;
    });
}

/* ---------- ultrametrics ---------- */

uw_status uw_metric_standard(const uw_tree* tree, const char* reference, uw_metric** out) {
    if (auto s = require_args({tree, out})) return s;
    return wrap([&] {
        VertexIndex ref =
            reference ? tree->impl->index_of(reference) : tree->impl->root();
        *out = new uw_metric{tree->impl,
                             std::make_shared<UltrametricAssignment>(
                                 UltrametricAssignment::standard(*tree->impl, ref))};
        return UW_OK;
    });
}

uw_status uw_metric_from_table(const uw_tree* tree, const char* const* ids,
                               const double* diameters, size_t count, uw_metric** out) {
    if (auto s = require_args({tree, ids, diameters, out})) return s;
    return wrap([&] {
        const DirectedTree& t = *tree->impl;
        std::vector<double> table(t.vertex_count(),
                                  std::numeric_limits<double>::quiet_NaN());
        for (const auto& [id, d] : zip_pairs(ids, diameters, count))
            table[t.index_of(id)] = d;
        for (VertexIndex v = 0; v < t.vertex_count(); ++v)
            if (std::isnan(table[v]))
                fail(ErrorCode::InvalidArgument,
                     "diameter table does not cover vertex '" + t.name(v) + "'");
        *out = new uw_metric{tree->impl,
                             std::make_shared<UltrametricAssignment>(
                                 UltrametricAssignment::from_table(t, std::move(table),
                                                                   t.root()))};
        return UW_OK;
    });
}

void uw_metric_free(uw_metric* metric) { delete metric; }

uw_status uw_metric_diameter(const uw_metric* metric, const char* id, double* out) {
    if (auto s = require_args({metric, id, out})) return s;
    return wrap([&] {
        *out = metric->impl->diameter(metric->tree->index_of(id));
        return UW_OK;
    });
}

uw_status uw_metric_distance(const uw_metric* metric, const char* a, const char* b,
                             double* out) {
    if (auto s = require_args({metric, a, b, out})) return s;
    return wrap([&] {
        const DirectedTree& t = *metric->tree;
        *out = distance(t, *metric->impl, t.index_of(a), t.index_of(b));
        return UW_OK;
    });
}

uw_status uw_metric_verify(const uw_metric* metric, char** report_json) {
    if (auto s = require_args({metric})) return s;
    return wrap([&] {
        MetricReport report = verify_ultrametric(*metric->tree, *metric->impl);
        if (report_json)
            *report_json = dup_string(driver::render_metric_report(*metric->tree, report));
        return report.pass() ? UW_OK : UW_ERR_VERIFICATION_FAILED;
    });
}

/* ---------- kernels ---------- */

uw_status uw_kernel_power(const uw_metric* metric, double alpha, uw_kernel** out) {
    if (auto s = require_args({metric, out})) return s;
    return wrap([&] {
        *out = new uw_kernel{metric->tree,
                             std::make_shared<OperatorKernel>(OperatorKernel::power(
                                 *metric->tree, *metric->impl, alpha))};
        return UW_OK;
    });
}

uw_status uw_kernel_from_table(const uw_tree* tree, const char* const* internal_ids,
                               const double* values, size_t count, uw_kernel** out) {
    if (auto s = require_args({tree, internal_ids, values, out})) return s;
    return wrap([&] {
        KernelSpec spec;
        spec.type = KernelSpec::Type::table;
        spec.values = zip_pairs(internal_ids, values, count);
        *out = new uw_kernel{tree->impl, std::make_shared<OperatorKernel>(realize_kernel(
                                             *tree->impl, nullptr, spec))};
        return UW_OK;
    });
}

void uw_kernel_free(uw_kernel* kernel) { delete kernel; }

/* ---------- wavelet basis ---------- */

uw_status uw_basis_build(const uw_tree* tree, const uw_measure* measure, uw_basis** out) {
    if (auto s = require_args({tree, measure, out})) return s;
    return wrap([&] {
        require_same_tree(tree->impl, measure->tree);
        *out = new uw_basis{tree->impl, measure->impl,
                            std::make_shared<WaveletBasis>(
                                WaveletBasis::build(*tree->impl, *measure->impl))};
        return UW_OK;
    });
}

void uw_basis_free(uw_basis* basis) { delete basis; }

size_t uw_basis_size(const uw_basis* basis) { return basis ? basis->impl->size() : 0; }

uw_status uw_basis_analyze(const uw_basis* basis, const double* f, size_t n,
                           double* coefficients) {
    if (auto s = require_args({basis, f, coefficients})) return s;
    return wrap([&] {
        auto coeffs = analyze(*basis->tree, *basis->measure, *basis->impl,
                              to_complex({f, n}));
        for (size_t i = 0; i < coeffs.size(); ++i) coefficients[i] = coeffs[i].real();
        return UW_OK;
    });
}

uw_status uw_basis_fast_analyze(const uw_basis* basis, const double* f, size_t n,
                                double* coefficients) {
    if (auto s = require_args({basis, f, coefficients})) return s;
    return wrap([&] {
        auto coeffs = fast_analyze(*basis->tree, *basis->measure, *basis->impl,
                                   to_complex({f, n}));
        for (size_t i = 0; i < coeffs.size(); ++i) coefficients[i] = coeffs[i].real();
        return UW_OK;
    });
}

uw_status uw_basis_synthesize(const uw_basis* basis, const double* coefficients, size_t n,
                              double* f) {
    if (auto s = require_args({basis, coefficients, f})) return s;
    return wrap([&] {
        auto values = synthesize(*basis->tree, *basis->impl, to_complex({coefficients, n}));
        for (size_t i = 0; i < values.size(); ++i) f[i] = values[i].real();
        return UW_OK;
    });
}

uw_status uw_basis_to_json(const uw_basis* basis, char** json) {
    if (auto s = require_args({basis, json})) return s;
    return wrap([&] {
        *json = dup_string(
            driver::render_basis(*basis->tree, *basis->measure, *basis->impl, false));
        return UW_OK;
    });
}

/* ---------- operators ---------- */

uw_status uw_spectrum_compute(const uw_tree* tree, const uw_measure* measure,
                              const uw_kernel* kernel, uw_spectrum** out) {
    if (auto s = require_args({tree, measure, kernel, out})) return s;
    return wrap([&] {
        require_same_tree(tree->impl, measure->tree);
        require_same_tree(tree->impl, kernel->tree);
        *out = new uw_spectrum{tree->impl,
                               std::make_shared<Spectrum>(Spectrum::compute(
                                   *tree->impl, *measure->impl, *kernel->impl))};
        return UW_OK;
    });
}

void uw_spectrum_free(uw_spectrum* spectrum) { delete spectrum; }

uw_status uw_spectrum_eigenvalue(const uw_spectrum* spectrum, const char* internal_id,
                                 double* out) {
    if (auto s = require_args({spectrum, internal_id, out})) return s;
    return wrap([&] {
        *out = spectrum->impl->eigenvalue(spectrum->tree->index_of(internal_id)).real();
        return UW_OK;
    });
}

uw_status uw_spectrum_to_json(const uw_spectrum* spectrum, char** json) {
    if (auto s = require_args({spectrum, json})) return s;
    return wrap([&] {
        *json = dup_string(driver::render_spectrum(*spectrum->tree, *spectrum->impl));
        return UW_OK;
    });
}

uw_status uw_apply(const uw_tree* tree, const uw_measure* measure, const uw_kernel* kernel,
                   const double* f, size_t n, double* out) {
    if (auto s = require_args({tree, measure, kernel, f, out})) return s;
    return wrap([&] {
        require_same_tree(tree->impl, measure->tree);
        require_same_tree(tree->impl, kernel->tree);
        WaveletBasis basis = WaveletBasis::build(*tree->impl, *measure->impl);
        auto result = apply_operator(*tree->impl, *measure->impl, *kernel->impl, basis,
                                     to_complex({f, n}));
        for (size_t i = 0; i < result.size(); ++i) out[i] = result[i].real();
        return UW_OK;
    });
}

uw_status uw_heat_apply(const uw_tree* tree, const uw_measure* measure,
                        const uw_kernel* kernel, double t, const double* f, size_t n,
                        double* out) {
    if (auto s = require_args({tree, measure, kernel, f, out})) return s;
    return wrap([&] {
        require_same_tree(tree->impl, measure->tree);
        require_same_tree(tree->impl, kernel->tree);
        WaveletBasis basis = WaveletBasis::build(*tree->impl, *measure->impl);
        auto result = heat_apply(*tree->impl, *measure->impl, *kernel->impl, basis,
                                 to_complex({f, n}), t);
        for (size_t i = 0; i < result.size(); ++i) out[i] = result[i].real();
        return UW_OK;
    });
}

/* ---------- document-level drivers ---------- */

uw_status uw_doc_validate(const char* spec_json, char** report_json) {
    if (auto s = require_args({spec_json})) return s;
    return wrap([&] {
        driver::Validation v = driver::validate_document(spec_json);
        if (report_json) *report_json = dup_string(v.report_json);
        return v.pass ? UW_OK : UW_ERR_VERIFICATION_FAILED;
    });
}

uw_status uw_doc_spectrum(const char* spec_json, const char* kernel_json, int verify,
                          char** out_json) {
    if (auto s = require_args({spec_json, out_json})) return s;
    return wrap([&] {
        std::optional<std::string> kernel;
        if (kernel_json) kernel = kernel_json;
        *out_json = dup_string(driver::spectrum_json(spec_json, kernel, verify != 0));
        return UW_OK;
    });
}

uw_status uw_doc_wavelets(const char* spec_json, char** out_json) {
    if (auto s = require_args({spec_json, out_json})) return s;
    return wrap([&] {
        *out_json = dup_string(driver::wavelets_json(spec_json));
        return UW_OK;
    });
}

uw_status uw_doc_metric(const char* spec_json, char** out_json) {
    if (auto s = require_args({spec_json, out_json})) return s;
    return wrap([&] {
        *out_json = dup_string(driver::metric_json(spec_json));
        return UW_OK;
    });
}

uw_status uw_doc_diffuse(const char* spec_json, const char* f_json, const double* times,
                         size_t n_times, char** out_csv, int* negative_eigenvalues) {
    if (auto s = require_args({spec_json, f_json, times, out_csv})) return s;
    return wrap([&] {
        driver::Diffusion d = driver::diffuse_csv(spec_json, f_json, {times, n_times});
        *out_csv = dup_string(d.csv);
        if (negative_eigenvalues) *negative_eigenvalues = d.negative_eigenvalues ? 1 : 0;
        return UW_OK;
    });
}

uw_status uw_doc_verify(const char* spec_json, char** report_json) {
    if (auto s = require_args({spec_json})) return s;
    return wrap([&] {
        driver::Verification v = driver::verify_document(spec_json);
        if (report_json) *report_json = dup_string(v.report_json);
        return v.pass ? UW_OK : UW_ERR_VERIFICATION_FAILED;
    });
}

uw_status uw_generate_padic(int p, int depth, char** spec_json) {
    if (auto s = require_args({spec_json})) return s;
    return wrap([&] {
        *spec_json = dup_string(driver::generate_padic_json(p, depth));
        return UW_OK;
    });
}

uw_status uw_generate_random(int leaves, unsigned long long seed, char** spec_json) {
    if (auto s = require_args({spec_json})) return s;
    return wrap([&] {
        *spec_json = dup_string(driver::generate_random_json(leaves, seed));
        return UW_OK;
    });
}

} // extern "C"
