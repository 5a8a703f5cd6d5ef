// Command-line front end. Talks to the library strictly through the C
// interface in ultrawave/ultrawave.h.
//
// Exit codes: 0 success, 1 domain violation (invalid tree/measure/metric,
// failed verification), 2 usage, parse or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ultrawave/ultrawave.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

int exit_code_for(uw_status status) {
    switch (status) {
        case UW_OK:
            return kExitOk;
        case UW_ERR_PARSE:
        case UW_ERR_IO:
        case UW_ERR_MISSING_KERNEL:
            return kExitUsage;
        default:
            return kExitViolation;
    }
}

int report_failure(uw_status status) {
    std::cerr << "error: " << uw_status_name(status) << ": " << uw_last_error() << "\n";
    return exit_code_for(status);
}

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { uw_string_free(ptr); }
    std::string str() const { return ptr ? ptr : ""; }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ultrametric wavelet analysis on finite directed trees"};
    app.require_subcommand(1);
    app.set_version_flag("--version", []() { return std::string(uw_version()); });

    std::string spec_path, kernel_path, f_path, out_path;
    bool verify_flag = false;
    std::vector<double> times;
    std::vector<int> padic_args;
    std::vector<long long> random_args;

    auto* validate = app.add_subcommand("validate", "check every invariant of a spec file");
    validate->add_option("spec", spec_path, "tree spec JSON file")->required();

    auto* metric = app.add_subcommand("metric", "export the diameter assignment");
    metric->add_option("spec", spec_path)->required();
    metric->add_option("--json", out_path, "output file (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "closed-form operator spectrum");
    spectrum->add_option("spec", spec_path)->required();
    spectrum->add_option("--kernel", kernel_path, "kernel JSON file overriding the spec");
    spectrum->add_flag("--verify", verify_flag, "embed the oracle verification report");
    spectrum->add_option("--json", out_path, "output file (default stdout)");

    auto* wavelets = app.add_subcommand("wavelets", "wavelet basis and Gram residual");
    wavelets->add_option("spec", spec_path)->required();
    wavelets->add_option("--json", out_path, "output file (default stdout)");

    auto* diffuse = app.add_subcommand("diffuse", "heat evolution exp(-tT) f as CSV");
    diffuse->add_option("spec", spec_path)->required();
    diffuse->add_option("--f", f_path, "leaf function JSON file")->required();
    diffuse->add_option("--t", times, "evolution times")
        ->required()
        ->delimiter(',');
    diffuse->add_option("--out", out_path, "output CSV file (default stdout)");

    auto* generate = app.add_subcommand("generate", "write a tree spec document");
    auto* padic_opt =
        generate->add_option("--padic", padic_args, "p depth: complete p-ary tree")
            ->expected(2);
    auto* random_opt =
        generate
            ->add_option("--random", random_args, "leaves seed: random tree, seeded")
            ->expected(2);
    padic_opt->excludes(random_opt);
    generate->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run all oracle checks against a spec");
    verify->add_option("spec", spec_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    auto load = [&](const std::string& path) -> std::optional<std::string> {
        auto text = read_file(path);
        if (!text) std::cerr << "error: cannot read '" << path << "'\n";
        return text;
    };

    if (validate->parsed()) {
        auto spec = load(spec_path);
        if (!spec) return kExitUsage;
        OwnedString report;
        uw_status status = uw_doc_validate(spec->c_str(), &report.ptr);
        if (status == UW_OK || status == UW_ERR_VERIFICATION_FAILED) {
            std::cout << report.str();
            return status == UW_OK ? kExitOk : kExitViolation;
        }
        return report_failure(status);
    }

    if (metric->parsed()) {
        auto spec = load(spec_path);
        if (!spec) return kExitUsage;
        OwnedString out;
        uw_status status = uw_doc_metric(spec->c_str(), &out.ptr);
        if (status != UW_OK) return report_failure(status);
        return write_output(out_path, out.str()) ? kExitOk : kExitUsage;
    }

    if (spectrum->parsed()) {
        auto spec = load(spec_path);
        if (!spec) return kExitUsage;
        std::optional<std::string> kernel;
        if (!kernel_path.empty()) {
            kernel = load(kernel_path);
            if (!kernel) return kExitUsage;
        }
        OwnedString out;
        uw_status status = uw_doc_spectrum(
            spec->c_str(), kernel ? kernel->c_str() : nullptr, verify_flag, &out.ptr);
        if (status != UW_OK) return report_failure(status);
        return write_output(out_path, out.str()) ? kExitOk : kExitUsage;
    }

    if (wavelets->parsed()) {
        auto spec = load(spec_path);
        if (!spec) return kExitUsage;
        OwnedString out;
        uw_status status = uw_doc_wavelets(spec->c_str(), &out.ptr);
        if (status != UW_OK) return report_failure(status);
        return write_output(out_path, out.str()) ? kExitOk : kExitUsage;
    }

    if (diffuse->parsed()) {
        auto spec = load(spec_path);
        if (!spec) return kExitUsage;
        auto f = load(f_path);
        if (!f) return kExitUsage;
        OwnedString out;
        int negative = 0;
        uw_status status = uw_doc_diffuse(spec->c_str(), f->c_str(), times.data(),
                                          times.size(), &out.ptr, &negative);
        if (status != UW_OK) return report_failure(status);
        if (negative)
            std::cerr << "warning: spectrum has negative or complex eigenvalues; "
                         "the evolution may amplify\n";
        return write_output(out_path, out.str()) ? kExitOk : kExitUsage;
    }

    if (generate->parsed()) {
        OwnedString out;
        uw_status status;
        if (!padic_args.empty()) {
            status = uw_generate_padic(padic_args[0], padic_args[1], &out.ptr);
        } else if (!random_args.empty()) {
            status = uw_generate_random(static_cast<int>(random_args[0]),
                                        static_cast<unsigned long long>(random_args[1]),
                                        &out.ptr);
        } else {
            std::cerr << "error: generate requires --padic or --random\n";
            return kExitUsage;
        }
        if (status != UW_OK) {
            std::cerr << "error: " << uw_status_name(status) << ": " << uw_last_error()
                      << "\n";
            return kExitUsage;
        }
        return write_output(out_path, out.str()) ? kExitOk : kExitUsage;
    }

    if (verify->parsed()) {
        auto spec = load(spec_path);
        if (!spec) return kExitUsage;
        OwnedString report;
        uw_status status = uw_doc_verify(spec->c_str(), &report.ptr);
        if (status == UW_OK || status == UW_ERR_VERIFICATION_FAILED) {
            std::cout << report.str();
            return status == UW_OK ? kExitOk : kExitViolation;
        }
        return report_failure(status);
    }

    return kExitUsage;
}
