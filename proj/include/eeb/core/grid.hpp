#ifndef EEB_CORE_GRID_HPP
#define EEB_CORE_GRID_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eeb/core/errors.hpp"

namespace eeb {

/// Strictly increasing times to maturity starting at 0.
class TauGrid {
public:
    TauGrid() = default;

    explicit TauGrid(std::vector<double> taus) : taus_(std::move(taus)) {
        if (taus_.empty()) throw DomainError("tau grid must not be empty");
        if (taus_.front() != 0.0) throw DomainError("tau grid must start at 0");
        for (std::size_t i = 1; i < taus_.size(); ++i) {
            if (!(taus_[i] > taus_[i - 1]) || !std::isfinite(taus_[i]))
                throw DomainError("tau grid must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }

    /// tau_i = (i/m) T
    static TauGrid uniform(double T, int m) {
        check_mesh_args(T, m);
        std::vector<double> t(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) t[i] = T * static_cast<double>(i) / m;
        t[m] = T;
        return TauGrid(std::move(t));
    }

    /// tau_i = (i/m)^2 T, dense near expiry.
    static TauGrid quadratic(double T, int m) {
        check_mesh_args(T, m);
        std::vector<double> t(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) {
            double q = static_cast<double>(i) / m;
            t[i] = q * q * T;
        }
        t[m] = T;
        return TauGrid(std::move(t));
    }

    std::span<const double> taus() const noexcept { return taus_; }
    std::size_t size() const noexcept { return taus_.size(); }
    double operator[](std::size_t i) const { return taus_[i]; }
    double horizon() const noexcept { return taus_.empty() ? 0.0 : taus_.back(); }

    /// Index j with taus[j] <= tau < taus[j+1]; the last segment is closed.
    std::size_t segment(double tau) const {
        if (taus_.size() < 2) return 0;
        auto it = std::upper_bound(taus_.begin(), taus_.end(), tau);
        std::size_t j = static_cast<std::size_t>(it - taus_.begin());
        j = j == 0 ? 0 : j - 1;
        return std::min(j, taus_.size() - 2);
    }

private:
    static void check_mesh_args(double T, int m) {
        if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("horizon T must be positive");
        if (m < 1) throw DomainError("mesh size m must be at least 1");
    }

    std::vector<double> taus_;
};

/// Piecewise-linear interpolation of node values over a tau grid. Exact at nodes.
inline double interp_linear(const TauGrid& grid, std::span<const double> values, double tau) {
    if (values.size() != grid.size()) throw DomainError("interp_linear: values and grid differ in length");
    if (!(tau >= 0.0) || tau > grid.horizon())
        throw DomainError("interp_linear: tau " + std::to_string(tau) + " outside [0, " +
                          std::to_string(grid.horizon()) + "]");
    if (grid.size() == 1) return values[0];
    std::size_t j = grid.segment(tau);
    double t0 = grid[j];
    double t1 = grid[j + 1];
    if (tau == t0) return values[j];
    if (tau == t1) return values[j + 1];
    double w = (tau - t0) / (t1 - t0);
    return values[j] + w * (values[j + 1] - values[j]);
}

/// Sampled early exercise boundary rho(tau) = S_f(T - tau), linear between nodes.
class BoundaryCurve {
public:
    BoundaryCurve() = default;

    BoundaryCurve(TauGrid grid, std::vector<double> rhos, double strike)
        : grid_(std::move(grid)), rhos_(std::move(rhos)), strike_(strike) {
        if (rhos_.size() != grid_.size()) throw DomainError("boundary curve: grid and values differ in length");
        if (rhos_.front() != strike_) throw DomainError("boundary curve must start at the strike");
        for (std::size_t i = 0; i < rhos_.size(); ++i) {
            if (!(rhos_[i] > 0.0) || rhos_[i] > strike_ || !std::isfinite(rhos_[i]))
                throw DomainError("boundary value out of (0, E] at index " + std::to_string(i));
        }
    }

    const TauGrid& grid() const noexcept { return grid_; }
    std::span<const double> rhos() const noexcept { return rhos_; }
    double strike() const noexcept { return strike_; }
    double horizon() const noexcept { return grid_.horizon(); }
    std::size_t size() const noexcept { return rhos_.size(); }

    double operator()(double tau) const { return interp_linear(grid_, rhos_, tau); }

private:
    TauGrid grid_;
    std::vector<double> rhos_;
    double strike_ = 0.0;
};

}  // namespace eeb

#endif
