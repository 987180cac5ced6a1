#ifndef EEB_CORE_PARAMS_HPP
#define EEB_CORE_PARAMS_HPP

#include <cmath>
#include <string>

#include "eeb/core/errors.hpp"

namespace eeb {

/// Black-Scholes market constants for a zero-dividend put: risk-free rate r,
/// volatility sigma and strike E, plus the derived Zhu constants
/// gamma = 2r/sigma^2, a = (1+gamma)/2 and b = (1-gamma)/2.
class MarketParams {
public:
    MarketParams(double r, double sigma, double strike) : r_(r), sigma_(sigma), strike_(strike) {
        if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive, got " + std::to_string(r));
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw DomainError("sigma must be positive, got " + std::to_string(sigma));
        if (!(strike > 0.0) || !std::isfinite(strike))
            throw DomainError("strike must be positive, got " + std::to_string(strike));
    }

    double r() const noexcept { return r_; }
    double sigma() const noexcept { return sigma_; }
    double strike() const noexcept { return strike_; }

    double gamma() const noexcept { return 2.0 * r_ / (sigma_ * sigma_); }
    double a() const noexcept { return 0.5 * (1.0 + gamma()); }
    double b() const noexcept { return 0.5 * (1.0 - gamma()); }

    /// Perpetual put boundary gamma*E/(1+gamma).
    double perpetual_boundary() const noexcept { return gamma() * strike_ / (1.0 + gamma()); }

    /// Same r and sigma with a different strike.
    MarketParams with_strike(double strike) const { return {r_, sigma_, strike}; }

    /// Parameters with a prescribed gamma at fixed sigma and strike.
    static MarketParams from_gamma(double gamma, double sigma, double strike) {
        return {0.5 * gamma * sigma * sigma, sigma, strike};
    }

private:
    double r_;
    double sigma_;
    double strike_;
};

/// Numerical settings shared by all integrals and root searches.
struct QuadratureConfig {
    int finite_subintervals = 1000;     // closed Boole panels need a multiple of 4
    double semi_inf_truncation = 50.0;  // dimensionless upper limit for [0, inf) integrals
    double root_tol = 1e-12;
    int max_iter = 200;

    void validate() const {
        if (finite_subintervals < 4 || finite_subintervals % 4 != 0)
            throw DomainError("finite_subintervals must be a positive multiple of 4, got " +
                              std::to_string(finite_subintervals));
        if (!(semi_inf_truncation > 0.0)) throw DomainError("semi_inf_truncation must be positive");
        if (!(root_tol > 0.0)) throw DomainError("root_tol must be positive");
        if (max_iter < 1) throw DomainError("max_iter must be at least 1");
    }
};

/// Smallest multiple of 4 that is >= n.
inline int round_up_to_panels(long long n) {
    if (n < 4) return 4;
    return static_cast<int>((n + 3) / 4 * 4);
}

}  // namespace eeb

#endif
