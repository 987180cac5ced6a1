#ifndef EEB_PSOR_HPP
#define EEB_PSOR_HPP

// Finite-difference benchmark for the American put. With x = ln(S/E),
// tau = T - t and u = e^{alpha x + beta tau} V / E the pricing inequality turns
// into the obstacle problem for the heat equation u_tau = (sigma^2/2) u_xx,
// u >= g. Each Crank-Nicolson level is a linear complementarity problem solved
// by projected SOR.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eeb/core.hpp"

namespace eeb {

struct PsorConfig {
    int n = 1000;            // x-nodes are -L + i h, i = 0 .. 2n
    int m = 1000;            // time levels 1 .. m
    double L = 2.5;          // half-width in log-moneyness
    double omega = 1.5;      // relaxation factor in (0, 2)
    double tol = 1e-9;       // max-norm change between sweeps
    double T = 1.0;          // horizon in years
    int max_sweeps = 100000;
    double contact_tol = 1e-8;  // |V - payoff| <= contact_tol * E counts as exercise

    double h() const noexcept { return L / n; }
    double k() const noexcept { return T / m; }

    void validate() const {
        if (n < 2) throw DomainError("psor: n must be at least 2");
        if (m < 1) throw DomainError("psor: m must be at least 1");
        if (!(L > 0.0)) throw DomainError("psor: L must be positive");
        if (!(T > 0.0)) throw DomainError("psor: T must be positive");
        if (!(omega > 0.0 && omega < 2.0)) throw DomainError("psor: omega must lie in (0, 2)");
        if (!(tol > 0.0)) throw DomainError("psor: tol must be positive");
        if (max_sweeps < 1) throw DomainError("psor: max_sweeps must be at least 1");
        if (!(contact_tol > 0.0)) throw DomainError("psor: contact_tol must be positive");
    }
};

class NoContactError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Transformed grid solution u(x_i, tau_j) with the constants needed to undo the transform.
class PsorSolution {
public:
    PsorSolution(const PsorConfig& cfg, const MarketParams& p)
        : cfg_(cfg), params_(p),
          alpha_(p.r() / (p.sigma() * p.sigma()) - 0.5),
          beta_(0.5 * p.r() + p.sigma() * p.sigma() / 8.0 + p.r() * p.r() / (2.0 * p.sigma() * p.sigma())),
          u_(static_cast<std::size_t>(2 * cfg.n + 1) * static_cast<std::size_t>(cfg.m + 1), 0.0),
          sweeps_(static_cast<std::size_t>(cfg.m + 1), 0) {}

    const PsorConfig& config() const noexcept { return cfg_; }
    const MarketParams& params() const noexcept { return params_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

    int nodes() const noexcept { return 2 * cfg_.n + 1; }
    int levels() const noexcept { return cfg_.m + 1; }
    double x(int i) const noexcept { return -cfg_.L + i * cfg_.h(); }
    double tau(int j) const noexcept { return j == cfg_.m ? cfg_.T : j * cfg_.k(); }

    double u(int i, int j) const { return u_[index(i, j)]; }
    double& u(int i, int j) { return u_[index(i, j)]; }

    /// Transformed payoff g(x, tau) = e^{alpha x + beta tau} (1 - e^x)^+.
    double transformed_payoff(int i, int j) const {
        const double xi = x(i);
        return std::exp(alpha_ * xi + beta_ * tau(j)) * std::max(1.0 - std::exp(xi), 0.0);
    }

    /// Option value V = E e^{-alpha x - beta tau} u at a grid node.
    double value(int i, int j) const {
        return params_.strike() * std::exp(-alpha_ * x(i) - beta_ * tau(j)) * u(i, j);
    }

    double payoff(int i) const { return std::max(params_.strike() * (1.0 - std::exp(x(i))), 0.0); }

    /// SOR sweeps used at each level (level 0 is the initial condition).
    std::span<const int> sweeps() const noexcept { return sweeps_; }
    int& sweeps_at(int j) { return sweeps_[static_cast<std::size_t>(j)]; }

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nodes()) + static_cast<std::size_t>(i);
    }

    PsorConfig cfg_;
    MarketParams params_;
    double alpha_;
    double beta_;
    std::vector<double> u_;
    std::vector<int> sweeps_;
};

/// Crank-Nicolson in time, projected SOR per level. u is pinned to the payoff
/// at x = -L (deep exercise region, V = E - S) and to 0 at x = L.
inline PsorSolution psor_solve(const MarketParams& p, const PsorConfig& cfg) {
    cfg.validate();
    PsorSolution sol(cfg, p);
    const int nx = sol.nodes();
    const int last = nx - 1;
    const double lambda = 0.5 * p.sigma() * p.sigma() * cfg.k() / (cfg.h() * cfg.h());
    const double diag = 1.0 + lambda;
    const double off = 0.5 * lambda;

    for (int i = 0; i < nx; ++i) sol.u(i, 0) = sol.transformed_payoff(i, 0);

    std::vector<double> rhs(nx, 0.0);
    std::vector<double> g(nx, 0.0);
    std::vector<double> cur(nx, 0.0);
    for (int j = 1; j <= cfg.m; ++j) {
        for (int i = 0; i < nx; ++i) g[i] = sol.transformed_payoff(i, j);
        for (int i = 1; i < last; ++i) {
            rhs[i] = (1.0 - lambda) * sol.u(i, j - 1) + off * (sol.u(i - 1, j - 1) + sol.u(i + 1, j - 1));
        }
        // previous level projected onto the new obstacle as the starting iterate
        for (int i = 0; i < nx; ++i) cur[i] = std::max(sol.u(i, j - 1), g[i]);
        cur[0] = g[0];
        cur[last] = 0.0;

        int sweep = 0;
        for (;;) {
            double change = 0.0;
            for (int i = 1; i < last; ++i) {
                const double gs = (rhs[i] + off * (cur[i - 1] + cur[i + 1])) / diag;
                const double next = std::max(g[i], cur[i] + cfg.omega * (gs - cur[i]));
                change = std::max(change, std::abs(next - cur[i]));
                cur[i] = next;
            }
            ++sweep;
            if (change < cfg.tol) break;
            if (sweep >= cfg.max_sweeps)
                throw NumericalError("psor_solve: SOR did not converge at level " + std::to_string(j) + " after " +
                                     std::to_string(sweep) + " sweeps");
        }
        sol.sweeps_at(j) = sweep;
        for (int i = 0; i < nx; ++i) sol.u(i, j) = cur[i];
    }
    return sol;
}

/// S_f = max{S : V(S) = (E - S)^+} at every time level. The last contact node
/// is refined inside the following cell by extrapolating sqrt(V - payoff),
/// which is linear in x next to a smooth-pasting contact, down to zero.
inline BoundaryCurve extract_boundary(const PsorSolution& sol) {
    const auto& cfg = sol.config();
    const double strike = sol.params().strike();
    const double h = cfg.h();
    const int centre = cfg.n;  // x = 0
    std::vector<double> rhos(static_cast<std::size_t>(cfg.m) + 1, strike);

    auto gap = [&](int i, int j) { return std::max(sol.value(i, j) - sol.payoff(i), 0.0); };

    for (int j = 1; j <= cfg.m; ++j) {
        int detached = -1;
        for (int i = 0; i <= centre; ++i) {
            if (gap(i, j) > cfg.contact_tol * strike) {
                detached = i;
                break;
            }
        }
        // node 0 is pinned to the payoff, so contact there alone says nothing
        if (detached <= 1)
            throw NoContactError("extract_boundary: no interior contact node at level " + std::to_string(j) +
                                 ", increase L");
        if (detached < 0) {
            rhos[j] = strike;
            continue;
        }
        const int contact = detached - 1;
        double x_f = sol.x(contact);
        if (detached + 1 < sol.nodes()) {
            const double r1 = std::sqrt(gap(detached, j));
            const double r2 = std::sqrt(gap(detached + 1, j));
            if (r2 > r1) x_f = std::clamp(sol.x(detached) - h * r1 / (r2 - r1), sol.x(contact), sol.x(detached));
        }
        rhos[j] = std::min(strike * std::exp(x_f), strike);
    }
    return {TauGrid::uniform(cfg.T, cfg.m), std::move(rhos), strike};
}

/// Bilinear lookup of V(S, t) on the grid, t measured in calendar time (tau = T - t).
inline double price_at(const PsorSolution& sol, double S, double t) {
    const auto& cfg = sol.config();
    if (!(S > 0.0)) throw DomainError("price_at: S must be positive");
    const double x = std::log(S / sol.params().strike());
    const double tau = cfg.T - t;
    if (x < -cfg.L - 1e-12 || x > cfg.L + 1e-12)
        throw DomainError("price_at: ln(S/E)=" + std::to_string(x) + " outside [-L, L]");
    if (tau < -1e-12 || tau > cfg.T + 1e-12) throw DomainError("price_at: t outside [0, T]");

    const double fx = std::clamp((x + cfg.L) / cfg.h(), 0.0, static_cast<double>(sol.nodes() - 1));
    const double ft = std::clamp(tau / cfg.k(), 0.0, static_cast<double>(cfg.m));
    const int i0 = std::min(static_cast<int>(fx), sol.nodes() - 2);
    const int j0 = std::min(static_cast<int>(ft), cfg.m - 1);
    const double wx = fx - i0;
    const double wt = ft - j0;
    const double v00 = sol.value(i0, j0);
    const double v10 = sol.value(i0 + 1, j0);
    const double v01 = sol.value(i0, j0 + 1);
    const double v11 = sol.value(i0 + 1, j0 + 1);
    return (1 - wt) * ((1 - wx) * v00 + wx * v10) + wt * ((1 - wx) * v01 + wx * v11);
}

}  // namespace eeb

#endif
