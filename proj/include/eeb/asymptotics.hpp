#ifndef EEB_ASYMPTOTICS_HPP
#define EEB_ASYMPTOTICS_HPP

// Closed-form approximations of the put boundary close to expiry. Each one is
// only defined on part of the tau axis; outside it a DomainError is raised
// instead of a meaningless number.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "eeb/core.hpp"

namespace eeb {

enum class AsymptoticMethod { KK, EKK, SSC_A, ZHU_ASYMPTOTE, CHEN_CHADAM };

constexpr std::string_view to_string(AsymptoticMethod m) noexcept {
    switch (m) {
        case AsymptoticMethod::KK: return "kk";
        case AsymptoticMethod::EKK: return "ekk";
        case AsymptoticMethod::SSC_A: return "ssc-a";
        case AsymptoticMethod::ZHU_ASYMPTOTE: return "zhu-asymptote";
        case AsymptoticMethod::CHEN_CHADAM: return "chen-chadam";
    }
    return "?";
}

namespace detail {

inline void require_positive_tau(double tau, std::string_view who) {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw DomainError(std::string(who) + ": tau must be positive, got " + std::to_string(tau));
}

// sqrt(-ln(arg)) with the log-domain check shared by KK, EKK and SSC-A.
inline double sqrt_neg_log(double arg, double tau, std::string_view who) {
    if (!(arg > 0.0) || !(arg < 1.0))
        throw DomainError(std::string(who) + ": log argument " + std::to_string(arg) + " not in (0, 1) at tau=" +
                          std::to_string(tau));
    return std::sqrt(-std::log(arg));
}

}  // namespace detail

/// Kuske-Keller: E(1 - sigma sqrt(2 tau) sqrt(-ln[(2r/sigma) sqrt(9 pi tau / 2)])).
inline double rho_kk(double tau, const MarketParams& p) {
    detail::require_positive_tau(tau, "rho_kk");
    const double arg = 2.0 * p.r() / p.sigma() * std::sqrt(4.5 * std::numbers::pi * tau);
    const double rho =
        p.strike() * (1.0 - p.sigma() * std::sqrt(2.0 * tau) * detail::sqrt_neg_log(arg, tau, "rho_kk"));
    if (!(rho > 0.0)) throw DomainError("rho_kk: non-positive boundary at tau=" + std::to_string(tau));
    return rho;
}

/// Evans-Kuske-Keller: as KK with the log argument (2r/sigma) sqrt(2 pi tau).
inline double rho_ekk(double tau, const MarketParams& p) {
    detail::require_positive_tau(tau, "rho_ekk");
    const double arg = 2.0 * p.r() / p.sigma() * std::sqrt(2.0 * std::numbers::pi * tau);
    const double rho =
        p.strike() * (1.0 - p.sigma() * std::sqrt(2.0 * tau) * detail::sqrt_neg_log(arg, tau, "rho_ekk"));
    if (!(rho > 0.0)) throw DomainError("rho_ekk: non-positive boundary at tau=" + std::to_string(tau));
    return rho;
}

/// Leading-order auxiliary function eta~(tau) = -sqrt(-ln[(2r/sigma) sqrt(2 pi tau) e^{r tau}]).
/// Also the starting value and near-expiry fallback of the integral-equation solver.
inline double eta_analytic(double tau, const MarketParams& p) {
    detail::require_positive_tau(tau, "eta_analytic");
    const double arg = 2.0 * p.r() / p.sigma() * std::sqrt(2.0 * std::numbers::pi * tau) * std::exp(p.r() * tau);
    return -detail::sqrt_neg_log(arg, tau, "eta_analytic");
}

/// rho(tau) = E exp(-(r - sigma^2/2) tau + sigma sqrt(2 tau) eta), the map from
/// the auxiliary function back to the boundary.
inline double rho_from_eta(double tau, double eta, const MarketParams& p) {
    const double s = p.sigma();
    return p.strike() * std::exp(-(p.r() - 0.5 * s * s) * tau + s * std::sqrt(2.0 * tau) * eta);
}

/// Stamicar-Sevcovic-Chadam analytic approximation built on eta~.
inline double rho_ssc_analytic(double tau, const MarketParams& p) {
    detail::require_positive_tau(tau, "rho_ssc_analytic");
    return rho_from_eta(tau, eta_analytic(tau, p), p);
}

/// Leading small-tau behaviour of Zhu's formula, E(1 - sigma/sqrt(2 pi) sqrt(tau) (-ln tau)).
inline double rho_zhu_asymptote(double tau, const MarketParams& p) {
    detail::require_positive_tau(tau, "rho_zhu_asymptote");
    if (!(tau < 1.0)) throw DomainError("rho_zhu_asymptote: requires tau < 1, got " + std::to_string(tau));
    const double rho =
        p.strike() * (1.0 - p.sigma() / std::sqrt(2.0 * std::numbers::pi) * std::sqrt(tau) * (-std::log(tau)));
    if (!(rho > 0.0)) throw DomainError("rho_zhu_asymptote: non-positive boundary at tau=" + std::to_string(tau));
    return rho;
}

/// xi = ln sqrt(8 pi r^2 tau / sigma^2), the expansion variable of the Chen-Chadam series.
inline double chen_chadam_xi(double tau, const MarketParams& p) {
    const double r = p.r();
    const double s = p.sigma();
    return 0.5 * std::log(8.0 * std::numbers::pi * r * r * tau / (s * s));
}

/// Sixth-order expansion of alpha in powers of 1/xi.
inline double chen_chadam_alpha(double xi) noexcept {
    const double u = 1.0 / xi;
    // Horner form of -xi - u/2 + u^2/8 + 17u^3/24 - 51u^4/64 - 287u^5/120 + 199u^6/32
    const double series =
        u * (-0.5 + u * (1.0 / 8.0 + u * (17.0 / 24.0 + u * (-51.0 / 64.0 + u * (-287.0 / 120.0 + u * 199.0 / 32.0)))));
    return -xi + series;
}

/// Largest xi accepted by rho_chen_chadam.
inline constexpr double kChenChadamXiCutoff = -1.0;

/// Chen-Chadam: E exp(-sigma sqrt(2 tau alpha(xi))). Valid for xi < -1 and alpha > 0.
inline double rho_chen_chadam(double tau, const MarketParams& p, double xi_cutoff = kChenChadamXiCutoff) {
    detail::require_positive_tau(tau, "rho_chen_chadam");
    const double xi = chen_chadam_xi(tau, p);
    if (!(xi < xi_cutoff))
        throw DomainError("rho_chen_chadam: xi=" + std::to_string(xi) + " outside the expansion regime (xi < " +
                          std::to_string(xi_cutoff) + ")");
    const double alpha = chen_chadam_alpha(xi);
    if (!(alpha > 0.0)) throw DomainError("rho_chen_chadam: alpha <= 0 at tau=" + std::to_string(tau));
    return p.strike() * std::exp(-p.sigma() * std::sqrt(2.0 * tau * alpha));
}

inline double rho_asymptotic(AsymptoticMethod m, double tau, const MarketParams& p) {
    switch (m) {
        case AsymptoticMethod::KK: return rho_kk(tau, p);
        case AsymptoticMethod::EKK: return rho_ekk(tau, p);
        case AsymptoticMethod::SSC_A: return rho_ssc_analytic(tau, p);
        case AsymptoticMethod::ZHU_ASYMPTOTE: return rho_zhu_asymptote(tau, p);
        case AsymptoticMethod::CHEN_CHADAM: return rho_chen_chadam(tau, p);
    }
    throw DomainError("rho_asymptotic: unknown method");
}

}  // namespace eeb

#endif
