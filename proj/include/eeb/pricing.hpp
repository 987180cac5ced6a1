#ifndef EEB_PRICING_HPP
#define EEB_PRICING_HPP

// Price consequences of using an approximate boundary. For a barrier put
// priced on the approximate boundary, the price deficit against the American
// put follows from Green's representation formula for the transformed heat
// equation; at the true boundary it reduces to a single integral of normal
// CDF differences.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "eeb/core.hpp"

namespace eeb {

/// Transform constants of the pricing identities (sign-flipped PSOR pair).
struct PriceTransformConsts {
    double alpha_p;
    double beta_p;

    static PriceTransformConsts from(const MarketParams& p) {
        const double r = p.r();
        const double s2 = p.sigma() * p.sigma();
        return {0.5 - r / s2, -0.5 * r - r * r / (2.0 * s2) - s2 / 8.0};
    }
};

/// Heat kernel G(x, tau) = exp(-x^2 / (2 sigma^2 tau)) / sqrt(2 pi sigma^2 tau).
struct GreenKernel {
    double sigma;

    double operator()(double x, double tau) const {
        const double var = sigma * sigma * tau;
        return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
    }
};

/// Black-Scholes European put; returns the payoff at tau = 0.
inline double european_put(double S, double tau, const MarketParams& p) {
    if (!(S > 0.0)) throw DomainError("european_put: S must be positive");
    if (!(tau >= 0.0)) throw DomainError("european_put: tau must be >= 0");
    const double E = p.strike();
    if (tau == 0.0) return std::max(E - S, 0.0);
    const double sd = p.sigma() * std::sqrt(tau);
    const double d1 = (std::log(S / E) + (p.r() + 0.5 * p.sigma() * p.sigma()) * tau) / sd;
    const double d2 = d1 - sd;
    return E * std::exp(-p.r() * tau) * norm_cdf(-d2) - S * norm_cdf(-d1);
}

namespace detail {

inline void require_on_curve(const BoundaryCurve& c, double tau, const char* who) {
    if (!(tau >= 0.0) || tau > c.horizon() * (1.0 + 1e-12))
        throw DomainError(std::string(who) + ": tau=" + std::to_string(tau) + " beyond curve horizon " +
                          std::to_string(c.horizon()));
}

inline double curve_at(const BoundaryCurve& c, double tau) { return c(std::min(tau, c.horizon())); }

}  // namespace detail

/// V^am - V^app at S = rho(tau):
///   r E int_0^tau e^{-r(tau-xi)} |N(gamma~) - N(gamma)| d xi,
/// integrated in s = sqrt(tau - xi) so the xi -> tau end is regular.
inline double price_gap_at_boundary(const BoundaryCurve& rho, const BoundaryCurve& rho_app, double tau,
                                    const MarketParams& p, const QuadratureConfig& cfg = {}) {
    detail::require_on_curve(rho, tau, "price_gap_at_boundary");
    detail::require_on_curve(rho_app, tau, "price_gap_at_boundary");
    if (tau == 0.0) return 0.0;
    const double r = p.r();
    const double s = p.sigma();
    const double drift = r - 0.5 * s * s;
    const double rho_tau = detail::curve_at(rho, tau);

    auto integrand = [&](double u) {
        if (u == 0.0) return 0.0;
        const double xi = std::max(tau - u * u, 0.0);
        const double den = s * u;
        const double g_app = (std::log(rho_tau / detail::curve_at(rho_app, xi)) + drift * u * u) / den;
        const double g_true = (std::log(rho_tau / detail::curve_at(rho, xi)) + drift * u * u) / den;
        return 2.0 * u * std::exp(-r * u * u) * std::abs(norm_cdf(g_app) - norm_cdf(g_true));
    };
    return r * p.strike() * integrate_newton_cotes(integrand, 0.0, std::sqrt(tau), cfg);
}

/// Half-width, in standard deviations, of the inner Gaussian integral in price_gap_full.
inline constexpr double kGreenCutoff = 40.0;

/// V^am(S, t) - V^app(S, t) from Green's representation formula:
///   r E int_0^tau | int_{ln(rho_app(xi)/E)}^{ln(rho(xi)/E)} G(x - s, tau - xi) e^{alpha_p (x - s) + beta_p (tau - xi)} ds | d xi
/// with x = ln(S/E), tau = T - t and T the curve horizon. Both integrals use
/// the Boole rule; the outer one in u = sqrt(tau - xi), the inner one in the
/// standardized variable w = (x - s)/(sigma u) clipped to |w| <= kGreenCutoff.
inline double price_gap_full(const BoundaryCurve& rho, const BoundaryCurve& rho_app, double S, double t,
                             const MarketParams& p, const QuadratureConfig& cfg = {}) {
    if (!(S > 0.0)) throw DomainError("price_gap_full: S must be positive");
    const double T = std::min(rho.horizon(), rho_app.horizon());
    const double tau = T - t;
    if (tau < 0.0 || t < 0.0) throw DomainError("price_gap_full: t outside [0, T]");
    if (tau == 0.0) return 0.0;
    const double E = p.strike();
    const double x = std::log(S / E);
    const auto tc = PriceTransformConsts::from(p);
    const GreenKernel green{p.sigma()};
    const double sig = p.sigma();

    auto outer = [&](double u) {
        if (u == 0.0) return 0.0;
        const double xi = std::max(tau - u * u, 0.0);
        const double upper = std::log(detail::curve_at(rho, xi) / E);
        const double lower = std::log(detail::curve_at(rho_app, xi) / E);
        if (upper == lower) return 0.0;
        const double v = u * u;
        const double scale = sig * u;
        // s = x - scale * w, ds = -scale dw
        double w_hi = (x - lower) / scale;
        double w_lo = (x - upper) / scale;
        const double sign = w_hi >= w_lo ? 1.0 : -1.0;
        if (sign < 0.0) std::swap(w_hi, w_lo);
        w_lo = std::clamp(w_lo, -kGreenCutoff, kGreenCutoff);
        w_hi = std::clamp(w_hi, -kGreenCutoff, kGreenCutoff);
        if (w_hi <= w_lo) return 0.0;
        auto inner = [&](double w) {
            const double y = scale * w;  // x - s
            return green(y, v) * std::exp(tc.alpha_p * y + tc.beta_p * v) * scale;
        };
        const double val = integrate_newton_cotes(inner, w_lo, w_hi, cfg);
        return 2.0 * u * std::abs(val);
    };
    return p.r() * E * integrate_newton_cotes(outer, 0.0, std::sqrt(tau), cfg);
}

/// err(tau) = (V^am - V^app) / (V^am - V^eu) at S = rho(tau), using V^am = E - rho(tau) there.
inline double mispricing_err(const BoundaryCurve& rho, const BoundaryCurve& rho_app, double tau,
                             const MarketParams& p, const QuadratureConfig& cfg = {}) {
    if (!(tau > 0.0)) throw DomainError("mispricing_err: tau must be positive");
    detail::require_on_curve(rho, tau, "mispricing_err");
    const double s_f = detail::curve_at(rho, tau);
    const double premium = p.strike() - s_f - european_put(s_f, tau, p);
    if (!(premium > 1e-14 * p.strike()))
        throw NumericalError("mispricing_err: American-European premium " + std::to_string(premium) +
                             " degenerate at tau=" + std::to_string(tau));
    return price_gap_at_boundary(rho, rho_app, tau, p, cfg) / premium;
}

/// Signed relative boundary error (rho - rho_app) / rho at tau.
inline double boundary_rel_err(const BoundaryCurve& rho, const BoundaryCurve& rho_app, double tau) {
    detail::require_on_curve(rho, tau, "boundary_rel_err");
    detail::require_on_curve(rho_app, tau, "boundary_rel_err");
    const double v = detail::curve_at(rho, tau);
    return (v - detail::curve_at(rho_app, tau)) / v;
}

}  // namespace eeb

#endif
