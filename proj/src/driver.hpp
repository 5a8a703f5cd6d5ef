#pragma once

#include <optional>
#include <span>
#include <string>

#include "treespec.hpp"

namespace ultrawave::driver {

/// Document-level operations behind the CLI subcommands. Inputs are JSON
/// texts; outputs are ready-to-write strings. Malformed input throws
/// Error(Parse); domain violations throw their specific codes, except in
/// validate, which reports them.

struct Validation {
    bool pass = false;
    std::string report_json;
};

/// Full invariant sweep: tree structure, measure positivity/additivity,
/// metric monotonicity, strong triangle inequality (exhaustive on small
/// trees, sampled above), kernel coverage.
Validation validate_document(const std::string& spec_json);

/// Closed-form spectrum as JSON; optional kernel override and embedded
/// oracle verification.
std::string spectrum_json(const std::string& spec_json,
                          const std::optional<std::string>& kernel_json, bool verify);

/// Wavelet basis (owner/index/child_values list, constant member) plus the
/// measured Gram-identity residual.
std::string wavelets_json(const std::string& spec_json);

/// Diameter assignment as a bare {vertex id: diameter} map.
std::string metric_json(const std::string& spec_json);

struct Diffusion {
    std::string csv;
    bool negative_eigenvalues = false;  // semigroup may amplify; caller may warn
};

/// Heat evolution e^(-tT) f at the requested times, one CSV row per time:
/// t, the leaf values, and the weighted L2 distance from the equilibrium
/// mean in the final column.
Diffusion diffuse_csv(const std::string& spec_json, const std::string& f_json,
                      std::span<const double> times);

struct Verification {
    bool pass = false;
    std::string report_json;
};

/// Every oracle check against the document: basis checks always, operator
/// checks when a kernel is present (skipped entries otherwise).
Verification verify_document(const std::string& spec_json);

std::string generate_padic_json(int p, int depth);
std::string generate_random_json(int leaves, std::uint64_t seed);

/// Component renderings shared with the C interface.
std::string render_measure(const DirectedTree& tree, const BallMeasure& measure);
std::string render_spectrum(const DirectedTree& tree, const Spectrum& spectrum);
std::string render_basis(const DirectedTree& tree, const BallMeasure& measure,
                         const WaveletBasis& basis, bool include_gram_residual);
std::string render_metric_report(const DirectedTree& tree, const MetricReport& report);

} // namespace ultrawave::driver
