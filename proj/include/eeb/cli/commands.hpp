#ifndef EEB_CLI_COMMANDS_HPP
#define EEB_CLI_COMMANDS_HPP

// Command implementations behind the `eebound` tool. They write CSV to a
// stream and report failures as exceptions; app.hpp maps those to exit codes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "eeb/asymptotics.hpp"
#include "eeb/core.hpp"
#include "eeb/pricing.hpp"
#include "eeb/psor.hpp"
#include "eeb/ssch.hpp"
#include "eeb/zhu.hpp"

namespace eeb::cli {

enum ExitCode : int { kOk = 0, kNumericalFailure = 1, kDomainFailure = 2, kUsage = 64 };

class UsageError : public Error {
public:
    using Error::Error;
};

enum class Method { KK, EKK, SSC_A, CHEN_CHADAM, ZHU, SSCH, PSOR };

inline constexpr std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::KK: return "kk";
        case Method::EKK: return "ekk";
        case Method::SSC_A: return "ssc-a";
        case Method::CHEN_CHADAM: return "chen-chadam";
        case Method::ZHU: return "zhu";
        case Method::SSCH: return "ssch";
        case Method::PSOR: return "psor";
    }
    return "?";
}

inline Method parse_method(std::string_view name) {
    for (Method m : {Method::KK, Method::EKK, Method::SSC_A, Method::CHEN_CHADAM, Method::ZHU, Method::SSCH,
                     Method::PSOR}) {
        if (method_name(m) == name) return m;
    }
    throw UsageError("unknown method '" + std::string(name) +
                     "' (expected kk, ekk, ssc-a, chen-chadam, zhu, ssch or psor)");
}

inline bool is_numerical_solver(Method m) noexcept { return m == Method::SSCH || m == Method::PSOR; }

struct RunSpec {
    std::vector<Method> methods;
    Method benchmark = Method::PSOR;
    double E = 100.0;
    double r = 0.1;
    double sigma = 0.3;
    std::optional<double> T;
    std::vector<double> taus;
    MeshKind mesh = MeshKind::Quadratic;
    std::optional<int> m;  // ssch mesh size or psor time steps
    int n = 1000;          // psor half-grid count
    double L = 2.5;
    double omega = 1.5;
    int precision = 6;
    char separator = ',';
    int points = 60;        // compare/mispricing grid size when no --tau list is given
    int curve_nodes = 400;  // sampling of closed-form curves used inside integrals
    QuadratureConfig quad;

    MarketParams params() const { return {r, sigma, E}; }

    /// Horizon: --T if given, otherwise the largest requested tau.
    double horizon() const {
        double t = T.value_or(0.0);
        for (double x : taus) t = std::max(t, x);
        if (!(t > 0.0)) throw UsageError("a positive --T or --tau is required");
        return t;
    }

    void validate() const {
        if (methods.empty()) throw UsageError("--method is required");
        if (!(E > 0.0) || !(r > 0.0) || !(sigma > 0.0)) throw UsageError("--E, --r and --sigma must be positive");
        for (double t : taus)
            if (!(t >= 0.0) || !std::isfinite(t)) throw UsageError("--tau values must be finite and >= 0");
        if (T && !(*T > 0.0)) throw UsageError("--T must be positive");
        if (m && *m < 2) throw UsageError("--m must be at least 2");
        if (n < 2) throw UsageError("--n must be at least 2");
        if (!(L > 0.0)) throw UsageError("--L must be positive");
        if (!(omega > 0.0 && omega < 2.0)) throw UsageError("--omega must lie in (0, 2)");
        if (precision < 1 || precision > 17) throw UsageError("--precision must lie in [1, 17]");
        if (points < 1) throw UsageError("--points must be positive");
        for (Method mt : methods) {
            if (is_numerical_solver(mt) && taus.empty() && !T)
                throw UsageError(std::string(method_name(mt)) + " needs --T or --tau");
        }
    }

    PsorConfig psor_config(double horizon) const {
        PsorConfig c;
        c.n = n;
        c.m = m.value_or(1000);
        c.L = L;
        c.omega = omega;
        c.T = horizon;
        return c;
    }

    int ssch_mesh(double horizon) const { return m.value_or(default_ssch_mesh_size(horizon)); }
};

/// Fixed-precision number formatting; non-finite values become `n/a`.
inline std::string format_number(std::optional<double> v, int precision) {
    if (!v || !std::isfinite(*v)) return "n/a";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, *v);
    return buf;
}

/// Closed-form methods evaluated at a single tau; rho(0) = E for all of them.
inline double closed_form_rho(Method m, double tau, const MarketParams& p, const QuadratureConfig& q) {
    if (tau == 0.0) return p.strike();
    switch (m) {
        case Method::KK: return rho_kk(tau, p);
        case Method::EKK: return rho_ekk(tau, p);
        case Method::SSC_A: return rho_ssc_analytic(tau, p);
        case Method::CHEN_CHADAM: return rho_chen_chadam(tau, p);
        case Method::ZHU: return rho_zhu(tau, p, q);
        default: break;
    }
    throw UsageError(std::string(method_name(m)) + " is not a closed-form method");
}

/// Full boundary curve of a method on [0, horizon]. Closed forms are sampled
/// on a quadratic mesh of spec.curve_nodes intervals.
inline BoundaryCurve build_curve(Method m, const RunSpec& spec, double horizon) {
    const auto p = spec.params();
    if (m == Method::SSCH) return solve_boundary(p, horizon, spec.ssch_mesh(horizon), spec.mesh, spec.quad);
    if (m == Method::PSOR) return extract_boundary(psor_solve(p, spec.psor_config(horizon)));
    auto grid = TauGrid::quadratic(horizon, spec.curve_nodes);
    std::vector<double> rhos(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) rhos[i] = closed_form_rho(m, grid[i], p, spec.quad);
    return {std::move(grid), std::move(rhos), p.strike()};
}

/// Values of one method at the requested taus; undefined points are nullopt.
inline std::vector<std::optional<double>> method_column(Method m, const RunSpec& spec, std::span<const double> taus,
                                                        double horizon) {
    std::vector<std::optional<double>> col(taus.size());
    if (is_numerical_solver(m)) {
        const auto curve = build_curve(m, spec, horizon);
        for (std::size_t i = 0; i < taus.size(); ++i) col[i] = curve(taus[i]);
        return col;
    }
    const auto p = spec.params();
    for (std::size_t i = 0; i < taus.size(); ++i) {
        try {
            col[i] = closed_form_rho(m, taus[i], p, spec.quad);
        } catch (const DomainError&) {
            col[i] = std::nullopt;
        }
    }
    return col;
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, char sep, int precision) : out_(out), sep_(sep), precision_(precision) {}

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? std::string(1, sep_) : "") << cols[i];
        out_ << '\n';
    }

    void row(const std::vector<std::optional<double>>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? std::string(1, sep_) : "") << format_number(cells[i], precision_);
        out_ << '\n';
    }

private:
    std::ostream& out_;
    char sep_;
    int precision_;
};

/// `boundary`: tau,rho for one method. Explicit --tau values must all be in
/// the method's domain; on its natural grid undefined points print as n/a.
inline int cmd_boundary(const RunSpec& spec, std::ostream& out) {
    spec.validate();
    const Method m = spec.methods.front();
    const auto p = spec.params();
    CsvWriter csv(out, spec.separator, spec.precision);

    std::vector<double> taus;
    std::vector<std::optional<double>> rhos;
    if (!spec.taus.empty()) {
        taus = spec.taus;
        if (is_numerical_solver(m)) {
            const auto col = method_column(m, spec, taus, spec.horizon());
            rhos.assign(col.begin(), col.end());
        } else {
            for (double t : taus) rhos.emplace_back(closed_form_rho(m, t, p, spec.quad));
        }
    } else {
        const double T = spec.horizon();
        if (is_numerical_solver(m)) {
            const auto curve = build_curve(m, spec, T);
            taus.assign(curve.grid().taus().begin(), curve.grid().taus().end());
            rhos.assign(curve.rhos().begin(), curve.rhos().end());
        } else {
            const auto grid = TauGrid::uniform(T, spec.m.value_or(100));
            taus.assign(grid.taus().begin(), grid.taus().end());
            rhos = method_column(m, spec, taus, T);
        }
    }
    csv.header({"tau", "rho"});
    for (std::size_t i = 0; i < taus.size(); ++i) csv.row({taus[i], rhos[i]});
    return kOk;
}

/// `compare`: one column per method plus relerr_<method> = |rho - rho_bench| / rho_bench.
inline int cmd_compare(const RunSpec& spec, std::ostream& out) {
    spec.validate();
    if (spec.methods.size() < 2) throw UsageError("compare needs at least two methods");
    const auto bench_it = std::find(spec.methods.begin(), spec.methods.end(), spec.benchmark);
    if (bench_it == spec.methods.end())
        throw UsageError("benchmark " + std::string(method_name(spec.benchmark)) + " is not among --method");
    const std::size_t bench = static_cast<std::size_t>(bench_it - spec.methods.begin());

    const double T = spec.horizon();
    std::vector<double> taus = spec.taus;
    if (taus.empty()) {
        for (int k = 1; k <= spec.points; ++k) taus.push_back(T * k / spec.points);
    }

    std::vector<std::future<std::vector<std::optional<double>>>> jobs;
    for (Method m : spec.methods)
        jobs.push_back(std::async(std::launch::async, [&, m] { return method_column(m, spec, taus, T); }));
    std::vector<std::vector<std::optional<double>>> cols;
    for (auto& j : jobs) cols.push_back(j.get());

    std::vector<std::string> head{"tau"};
    for (Method m : spec.methods) head.emplace_back(method_name(m));
    for (Method m : spec.methods) head.push_back("relerr_" + std::string(method_name(m)));

    CsvWriter csv(out, spec.separator, spec.precision);
    csv.header(head);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        std::vector<std::optional<double>> row{taus[i]};
        for (const auto& c : cols) row.push_back(c[i]);
        const auto b = cols[bench][i];
        for (const auto& c : cols) {
            if (c[i] && b && *b > 0.0)
                row.emplace_back(std::abs(*c[i] - *b) / *b);
            else
                row.emplace_back(std::nullopt);
        }
        csv.row(row);
    }
    return kOk;
}

/// `gamma0`: critical gamma, checked against its defining equation before printing.
inline int cmd_gamma0(std::ostream& out, const QuadratureConfig& q = {}) {
    const double g0 = gamma_critical(q);
    const double check = f2_max(g0, q);
    if (!(std::abs(check - std::numbers::pi) <= 1e-5))
        throw NumericalError("gamma0: f2_max(gamma0) = " + std::to_string(check) + " differs from pi");
    out << format_number(g0, 7) << '\n';
    return kOk;
}

/// Log-spaced taus in [T * lower_fraction, T].
inline std::vector<double> log_spaced(double T, int points, double lower_fraction = 1e-3) {
    std::vector<double> t;
    if (points == 1) return {T};
    const double a = std::log(T * lower_fraction);
    const double b = std::log(T);
    for (int k = 0; k < points; ++k) t.push_back(std::exp(a + (b - a) * k / (points - 1)));
    t.back() = T;
    return t;
}

/// `mispricing`: eps and err of the approximation methods.front() against the benchmark.
inline int cmd_mispricing(const RunSpec& spec, std::ostream& out) {
    spec.validate();
    const double T = spec.T.value_or(0.006);
    const auto p = spec.params();
    const Method approx = spec.methods.front();
    auto bench_job = std::async(std::launch::async, [&] { return build_curve(spec.benchmark, spec, T); });
    const auto approx_curve = build_curve(approx, spec, T);
    const auto bench_curve = bench_job.get();

    std::vector<double> taus = spec.taus.empty() ? log_spaced(T, spec.points) : spec.taus;
    CsvWriter csv(out, spec.separator, spec.precision);
    csv.header({"tau", "eps", "err"});
    for (double t : taus) {
        if (!(t > 0.0) || t > T) throw UsageError("mispricing taus must lie in (0, T]");
        csv.row({t, boundary_rel_err(bench_curve, approx_curve, t),
                 mispricing_err(bench_curve, approx_curve, t, p, spec.quad)});
    }
    return kOk;
}

}  // namespace eeb::cli

#endif
