#ifndef EEB_SSCH_HPP
#define EEB_SSCH_HPP

// Local iterative solver for the nonlinear integral equation of the auxiliary
// function eta(tau), where rho(tau) = E exp(-(r - sigma^2/2) tau + sigma sqrt(2 tau) eta(tau)).
// Node values are found one at a time: eta_i only depends on eta_i itself
// and on the already computed history eta_1 .. eta_{i-1}.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "eeb/asymptotics.hpp"
#include "eeb/core.hpp"

namespace eeb {

enum class MeshKind { Uniform, Quadratic };

inline TauGrid make_mesh(MeshKind kind, double T, int m) {
    return kind == MeshKind::Uniform ? TauGrid::uniform(T, m) : TauGrid::quadratic(T, m);
}

/// Mesh size used when the caller does not choose one.
inline int default_ssch_mesh_size(double T) { return T <= 1.0 ? 100 : 200; }

/// Node values eta_1 .. eta_k of the auxiliary function on a tau mesh. Below
/// tau_1 the path is given by a closed near-expiry formula (eta_analytic by
/// default); from tau_1 on it is linear between nodes.
class EtaPath {
public:
    using NearExpiry = std::function<double(double)>;

    EtaPath(TauGrid grid, const MarketParams& p)
        : EtaPath(std::move(grid), [p](double tau) { return eta_analytic(tau, p); }) {}

    EtaPath(TauGrid grid, NearExpiry near_expiry) : grid_(std::move(grid)), near_expiry_(std::move(near_expiry)) {
        if (grid_.size() < 2) throw DomainError("EtaPath: mesh needs at least one node after tau=0");
        etas_.reserve(grid_.size() - 1);
    }

    const TauGrid& grid() const noexcept { return grid_; }
    /// Number of solved nodes; node indices 1..known() hold values.
    std::size_t known() const noexcept { return etas_.size(); }
    /// Index of the next node to be solved.
    std::size_t next_index() const noexcept { return etas_.size() + 1; }
    bool complete() const noexcept { return next_index() >= grid_.size(); }

    double eta(std::size_t i) const {
        if (i < 1 || i > etas_.size()) throw DomainError("EtaPath: node " + std::to_string(i) + " not solved");
        return etas_[i - 1];
    }
    std::span<const double> etas() const noexcept { return etas_; }

    void push(double eta) {
        if (complete()) throw DomainError("EtaPath: all nodes already solved");
        if (!(eta < 0.0) || !std::isfinite(eta))
            throw DomainError("EtaPath: eta must be negative and finite, got " + std::to_string(eta));
        etas_.push_back(eta);
    }

    /// Path value at tau using solved nodes only.
    double operator()(double tau) const {
        if (tau > 0.0 && tau < grid_[1]) return near_expiry_(tau);
        if (etas_.empty() || tau > grid_[etas_.size()] || !(tau >= 0.0))
            throw DomainError("EtaPath: tau " + std::to_string(tau) + " beyond solved nodes");
        return interpolate(tau, etas_.size(), etas_.back());
    }

    /// Path value at tau when node next_index() is assigned the trial value eta_next.
    double eval_with_candidate(double tau, double eta_next) const {
        if (tau > 0.0 && tau < grid_[1]) return near_expiry_(tau);
        const std::size_t i = next_index();
        if (i >= grid_.size() || tau > grid_[i] || !(tau > 0.0))
            throw DomainError("EtaPath: tau " + std::to_string(tau) + " outside (0, tau_i]");
        return interpolate(tau, i, eta_next);
    }

private:
    // Linear interpolation over nodes 1..last where node `last` has value last_value.
    double interpolate(double tau, std::size_t last, double last_value) const {
        if (tau >= grid_[last]) return last_value;
        const auto taus = grid_.taus();
        auto it = std::upper_bound(taus.begin() + 1, taus.begin() + static_cast<std::ptrdiff_t>(last) + 1, tau);
        const std::size_t j = static_cast<std::size_t>(it - taus.begin()) - 1;  // tau_j <= tau < tau_{j+1}
        const double e0 = etas_[j - 1];
        const double e1 = j + 1 == last ? last_value : etas_[j];
        const double w = (tau - taus[j]) / (taus[j + 1] - taus[j]);
        return e0 + w * (e1 - e0);
    }

    TauGrid grid_;
    NearExpiry near_expiry_;
    std::vector<double> etas_;
};

/// Node tau_i of the next unsolved index, checked against the caller's value.
namespace detail {
inline void check_next_node(const EtaPath& path, double tau_i) {
    const std::size_t i = path.next_index();
    if (i >= path.grid().size()) throw DomainError("ssch: path already complete");
    const double node = path.grid()[i];
    if (std::abs(node - tau_i) > 1e-14 * std::max(1.0, node))
        throw DomainError("ssch: tau_i=" + std::to_string(tau_i) + " is not the next mesh node " +
                          std::to_string(node));
}
}  // namespace detail

/// G(theta) = [eta_i - eta^(tau_i sin^2 theta) sin theta] / cos theta for theta in [0, pi/2).
inline double g_eval(const EtaPath& path, double eta_i, double tau_i, double theta) {
    if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2))
        throw DomainError("g_eval: theta must lie in [0, pi/2)");
    detail::check_next_node(path, tau_i);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double hist = s == 0.0 ? 0.0 : path.eval_with_candidate(tau_i * s * s, eta_i) * s;
    return (eta_i - hist) / c;
}

/// F(tau_i) = 2 int_0^{pi/2} exp(-r tau_i cos^2 - G^2) [sigma sqrt(tau_i/2) sin + G tan] d theta.
/// The integrand has a finite limit at pi/2 that the formula cannot evaluate, so
/// the last Boole node is moved to pi/2 - (pi/2)/(10 N).
inline double big_f_eval(const EtaPath& path, double eta_i, double tau_i, const MarketParams& p,
                         const QuadratureConfig& cfg = {}) {
    if (!(tau_i > 0.0)) throw DomainError("big_f_eval: tau_i must be positive");
    detail::check_next_node(path, tau_i);
    cfg.validate();
    const int n = cfg.finite_subintervals;
    const double half_pi = std::numbers::pi / 2;
    const double h = half_pi / n;
    const double last = half_pi - half_pi / (10.0 * n);
    const double drift = p.sigma() * std::sqrt(0.5 * tau_i);
    const double rt = p.r() * tau_i;

    auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double hist = s == 0.0 ? 0.0 : path.eval_with_candidate(tau_i * s * s, eta_i) * s;
        const double g = (eta_i - hist) / c;
        return std::exp(-rt * c * c - g * g) * (drift * s + g * s / c);
    };
    return 2.0 * detail::boole_sum(integrand, 0.0, half_pi, n, [&](int k) { return k == n ? last : k * h; });
}

struct EtaResidual {
    double value;       // R(eta) = eta + sqrt(-ln arg), continued past the log domain
    double log_argument;
};

/// Residual of the fixed-point equation for eta_i. For log arguments >= 1 the
/// square root is continued as -sqrt(ln arg); for arguments <= 0 the residual is
/// +max so that bisection treats them as lying above the root.
inline EtaResidual eta_residual(const EtaPath& path, double eta_i, double tau_i, const MarketParams& p,
                                const QuadratureConfig& cfg = {}) {
    const double f = big_f_eval(path, eta_i, tau_i, p, cfg);
    const double arg = p.r() * std::sqrt(2.0 * std::numbers::pi * tau_i) / p.sigma() * std::exp(p.r() * tau_i) *
                       (1.0 - f / std::sqrt(std::numbers::pi));
    if (!(arg > 0.0)) return {std::numeric_limits<double>::max(), arg};
    const double l = -std::log(arg);
    return {eta_i + std::copysign(std::sqrt(std::abs(l)), l), arg};
}

/// Solves for eta at the next unsolved node tau_i. The first node uses the
/// closed formula; later nodes bisect the residual on a bracket around eta_{i-1}.
inline double solve_eta_at(const EtaPath& path, double tau_i, const MarketParams& p,
                           const QuadratureConfig& cfg = {}) {
    detail::check_next_node(path, tau_i);
    if (path.known() == 0) return eta_analytic(tau_i, p);

    const double prev = path.eta(path.known());
    auto residual = [&](double eta) { return eta_residual(path, eta, tau_i, p, cfg).value; };

    constexpr double kEtaCeiling = -1e-12;
    constexpr int kExpansions = 8;
    double width = 1.0;
    for (int attempt = 0; attempt <= kExpansions; ++attempt, width *= 2.0) {
        const double lo = prev - width;
        const double hi = std::min(prev + width, kEtaCeiling);
        const double rlo = residual(lo);
        const double rhi = residual(hi);
        if (std::signbit(rlo) == std::signbit(rhi)) continue;
        const double eta = find_root_bracketed(residual, lo, hi, cfg);
        const auto check = eta_residual(path, eta, tau_i, p, cfg);
        if (!(check.log_argument > 0.0 && check.log_argument < 1.0))
            throw DomainError("solve_eta_at: log argument " + std::to_string(check.log_argument) +
                              " outside (0, 1) at tau=" + std::to_string(tau_i));
        return eta;
    }
    throw NoSignChangeError("solve_eta_at: residual has no sign change near eta_{i-1}=" + std::to_string(prev) +
                            " at tau=" + std::to_string(tau_i));
}

/// Largest log argument allowed at the first node.
inline double first_node_log_argument(double tau1, const MarketParams& p) {
    return 2.0 * p.r() / p.sigma() * std::sqrt(2.0 * std::numbers::pi * tau1) * std::exp(p.r() * tau1);
}

/// Runs the node-by-node solve over an arbitrary mesh and returns the eta path.
inline EtaPath solve_eta_path(const MarketParams& p, TauGrid grid, const QuadratureConfig& cfg = {}) {
    if (grid.size() < 3) throw DomainError("solve_boundary: need m >= 2");
    const double tau1 = grid[1];
    if (!(first_node_log_argument(tau1, p) < 1.0))
        throw DomainError("solve_boundary: first mesh node tau_1=" + std::to_string(tau1) +
                          " too large, (2r/sigma) sqrt(2 pi tau_1) e^{r tau_1} >= 1");
    EtaPath path(std::move(grid), p);
    while (!path.complete()) {
        const std::size_t i = path.next_index();
        const double tau_i = path.grid()[i];
        try {
            path.push(solve_eta_at(path, tau_i, p, cfg));
        } catch (const DomainError& e) {
            throw DomainError("node " + std::to_string(i) + ": " + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError("node " + std::to_string(i) + ": " + e.what());
        }
    }
    return path;
}

/// Boundary curve rho_i = E exp(-(r - sigma^2/2) tau_i + sigma sqrt(2 tau_i) eta_i), rho_0 = E.
inline BoundaryCurve boundary_from_path(const EtaPath& path, const MarketParams& p) {
    std::vector<double> rhos(path.grid().size());
    rhos[0] = p.strike();
    for (std::size_t i = 1; i < rhos.size(); ++i) rhos[i] = rho_from_eta(path.grid()[i], path.eta(i), p);
    return {path.grid(), std::move(rhos), p.strike()};
}

inline BoundaryCurve solve_boundary(const MarketParams& p, double T, int m, MeshKind mesh = MeshKind::Quadratic,
                                    const QuadratureConfig& cfg = {}) {
    if (m < 2) throw DomainError("solve_boundary: need m >= 2");
    return boundary_from_path(solve_eta_path(p, make_mesh(mesh, T, m), cfg), p);
}

}  // namespace eeb

#endif
