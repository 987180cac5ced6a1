#ifndef EEB_CLI_APP_HPP
#define EEB_CLI_APP_HPP

#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eeb/cli/commands.hpp"

namespace eeb::cli {

namespace detail {

struct RawOptions {
    std::vector<std::string> methods;
    std::string benchmark = "psor";
    std::string mesh = "quadratic";
    std::string format = "csv";
    std::string out;
    double T = 0.0;
    int m = 0;
};

inline void add_common(CLI::App* cmd, RunSpec& spec, RawOptions& raw, bool multi_method) {
    auto* method = cmd->add_option("--method", raw.methods,
                                   multi_method ? "Methods, comma separated" : "kk|ekk|ssc-a|chen-chadam|zhu|ssch|psor");
    method->delimiter(',');
    cmd->add_option("--E", spec.E, "Strike price")->capture_default_str();
    cmd->add_option("--r", spec.r, "Risk-free rate")->capture_default_str();
    cmd->add_option("--sigma", spec.sigma, "Volatility")->capture_default_str();
    cmd->add_option("--T", raw.T, "Horizon in years");
    cmd->add_option("--tau", spec.taus, "Times to maturity in years, comma separated")->delimiter(',');
    cmd->add_option("--mesh", raw.mesh, "ssch mesh: uniform|quadratic")->capture_default_str();
    cmd->add_option("--m", raw.m, "ssch mesh size or psor time steps");
    cmd->add_option("--n", spec.n, "psor half-grid count")->capture_default_str();
    cmd->add_option("--L", spec.L, "psor log-moneyness half-width")->capture_default_str();
    cmd->add_option("--omega", spec.omega, "psor relaxation factor")->capture_default_str();
    cmd->add_option("--benchmark", raw.benchmark, "Benchmark method")->capture_default_str();
    cmd->add_option("--out", raw.out, "Output file (default stdout)");
    cmd->add_option("--precision", spec.precision, "Significant digits")->capture_default_str();
    cmd->add_option("--format", raw.format, "csv|tsv")->capture_default_str();
    cmd->add_option("--points", spec.points, "Grid size when --tau is absent")->capture_default_str();
    cmd->add_option("--subintervals", spec.quad.finite_subintervals, "Quadrature subintervals (multiple of 4)")
        ->capture_default_str();
}

inline void finish_spec(RunSpec& spec, const RawOptions& raw) {
    spec.methods.clear();
    for (const auto& name : raw.methods) spec.methods.push_back(parse_method(name));
    spec.benchmark = parse_method(raw.benchmark);
    if (raw.mesh == "uniform")
        spec.mesh = MeshKind::Uniform;
    else if (raw.mesh == "quadratic")
        spec.mesh = MeshKind::Quadratic;
    else
        throw UsageError("--mesh must be uniform or quadratic");
    if (raw.format == "csv")
        spec.separator = ',';
    else if (raw.format == "tsv")
        spec.separator = '\t';
    else
        throw UsageError("--format must be csv or tsv");
    if (raw.T != 0.0) spec.T = raw.T;
    if (raw.m != 0) spec.m = raw.m;
    if (spec.quad.finite_subintervals < 4 || spec.quad.finite_subintervals % 4 != 0)
        throw UsageError("--subintervals must be a positive multiple of 4");
}

}  // namespace detail

/// Parses argv and runs the selected command. Returns the process exit code:
/// 0 success, 1 numerical failure, 2 domain error, 64 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Early exercise boundary of the American put: closed forms, integral equation, PSOR"};
    app.require_subcommand(1);

    RunSpec spec;
    detail::RawOptions raw;
    auto* boundary = app.add_subcommand("boundary", "Boundary curve of one method as tau,rho");
    detail::add_common(boundary, spec, raw, false);
    auto* compare = app.add_subcommand("compare", "Methods side by side with relative errors to a benchmark");
    detail::add_common(compare, spec, raw, true);
    auto* gamma0 = app.add_subcommand("gamma0", "Critical gamma for convexity of Zhu's boundary");
    auto* mispricing = app.add_subcommand("mispricing", "Boundary and price errors of an approximation near expiry");
    detail::add_common(mispricing, spec, raw, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    try {
        if (gamma0->parsed()) return cmd_gamma0(out, spec.quad);
        detail::finish_spec(spec, raw);
        if (!raw.out.empty()) {
            file = std::make_unique<std::ofstream>(raw.out, std::ios::binary);
            if (!*file) throw UsageError("cannot open --out file " + raw.out);
            sink = file.get();
        }
        if (boundary->parsed()) return cmd_boundary(spec, *sink);
        if (compare->parsed()) return cmd_compare(spec, *sink);
        if (mispricing->parsed()) {
            if (raw.methods.empty()) spec.methods = {Method::ZHU};
            return cmd_mispricing(spec, *sink);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kUsage;
}

}  // namespace eeb::cli

#endif
