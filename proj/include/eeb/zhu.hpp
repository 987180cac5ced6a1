#ifndef EEB_ZHU_HPP
#define EEB_ZHU_HPP

// Zhu's closed-form boundary: the perpetual put level plus a damped
// semi-infinite integral over the kernels f1*, f2*.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eeb/asymptotics.hpp"
#include "eeb/core.hpp"

namespace eeb {

struct ZhuKernelValue {
    double f1;
    double f2;
};

/// Kernels f1*(zeta), f2*(zeta) for a given gamma = 2r/sigma^2.
inline ZhuKernelValue zhu_kernels(double zeta, double gamma) {
    if (!(zeta >= 0.0)) throw DomainError("zhu_kernels: zeta must be >= 0");
    if (!(gamma > 0.0)) throw DomainError("zhu_kernels: gamma must be positive");
    const double a = 0.5 * (1.0 + gamma);
    const double b = 0.5 * (1.0 - gamma);
    const double denom = b * b + zeta * zeta;
    if (denom == 0.0) throw DomainError("zhu_kernels: singular kernel at zeta=0 for gamma=1");
    const double log_term = std::log(std::hypot(a, zeta) / gamma);
    const double angle = std::atan(zeta / a);
    return {(b * log_term + zeta * angle) / denom, (zeta * log_term - b * angle) / denom};
}

inline ZhuKernelValue zhu_kernels(double zeta, const MarketParams& p) { return zhu_kernels(zeta, p.gamma()); }

/// Tau below which rho_zhu switches to the closed small-tau asymptote.
inline constexpr double kZhuAsymptoticTau = 1e-6;
/// Largest quadrature step in zeta; the kernels vary on the scale of a ~ 1.
inline constexpr double kZhuMaxStep = 0.05;

struct ZhuEvaluation {
    double value = 0.0;
    bool asymptotic = false;       // tau < kZhuAsymptoticTau, value from rho_zhu_asymptote
    bool negative_kernel = false;  // sin(f2*) < 0 somewhere on the quadrature nodes (gamma < gamma_0)
    double tail_bound = 0.0;
};

namespace detail {

// Integrates weight(zeta) * e^{-tau sigma^2 (a^2+zeta^2)/2} e^{-f1*} sin(f2*) over [0, inf).
// The truncation keeps the Gaussian factor below e^{-decay^2/2}.
template <typename Weight>
ZhuEvaluation zhu_integral(double tau, const MarketParams& p, const QuadratureConfig& cfg, double decay,
                           const Weight& weight) {
    const double gamma = p.gamma();
    const double a2 = p.a() * p.a();
    const double half_var = 0.5 * tau * p.sigma() * p.sigma();

    QuadratureConfig local = cfg;
    local.semi_inf_truncation = std::max(cfg.semi_inf_truncation, decay / (p.sigma() * std::sqrt(tau)));
    local.finite_subintervals =
        std::max(cfg.finite_subintervals,
                 round_up_to_panels(static_cast<long long>(std::ceil(local.semi_inf_truncation / kZhuMaxStep))));

    ZhuEvaluation out;
    auto integrand = [&](double zeta) {
        if (zeta == 0.0) return 0.0;
        const auto k = zhu_kernels(zeta, gamma);
        const double s = std::sin(k.f2);
        if (s < 0.0) out.negative_kernel = true;
        return weight(zeta, a2 + zeta * zeta) * std::exp(-half_var * (a2 + zeta * zeta) - k.f1) * s;
    };
    const auto res = integrate_semi_infinite(integrand, local);
    out.value = res.value;
    out.tail_bound = res.tail_bound;
    return out;
}

}  // namespace detail

/// Zhu's boundary with diagnostics. For tau < 1e-6 the fixed-truncation
/// quadrature is replaced by rho_zhu_asymptote and `asymptotic` is set.
inline ZhuEvaluation rho_zhu_detailed(double tau, const MarketParams& p, const QuadratureConfig& cfg = {}) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("rho_zhu: tau must be positive");
    if (tau < kZhuAsymptoticTau) {
        ZhuEvaluation out;
        out.value = rho_zhu_asymptote(tau, p);
        out.asymptotic = true;
        return out;
    }
    auto out = detail::zhu_integral(tau, p, cfg, 8.0,
                                    [](double zeta, double a2z2) { return zeta / a2z2; });
    out.value = p.perpetual_boundary() + 2.0 * p.strike() / std::numbers::pi * out.value;
    return out;
}

inline double rho_zhu(double tau, const MarketParams& p, const QuadratureConfig& cfg = {}) {
    return rho_zhu_detailed(tau, p, cfg).value;
}

/// d^2 rho_zhu / d tau^2 by differentiating under the integral sign.
inline double zhu_second_derivative(double tau, const MarketParams& p, const QuadratureConfig& cfg = {}) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("zhu_second_derivative: tau must be positive");
    const auto res = detail::zhu_integral(tau, p, cfg, 10.0,
                                          [](double zeta, double a2z2) { return a2z2 * zeta; });
    const double s2 = p.sigma() * p.sigma();
    return 2.0 * p.strike() * s2 * s2 / (4.0 * std::numbers::pi) * res.value;
}

/// G(gamma) = max over zeta > 0 of f2*(zeta; gamma): coarse log scan over
/// [1e-6, 1e6] followed by golden-section refinement around the best sample.
inline double f2_max(double gamma, const QuadratureConfig& cfg = {}) {
    if (!(gamma > 0.0)) throw DomainError("f2_max: gamma must be positive");
    constexpr int kScan = 512;
    const double log_lo = std::log(1e-6);
    const double log_hi = std::log(1e6);
    auto zeta_at = [&](int k) { return std::exp(log_lo + (log_hi - log_lo) * k / (kScan - 1)); };
    auto f2 = [&](double z) { return zhu_kernels(z, gamma).f2; };

    int best = 0;
    double best_val = f2(zeta_at(0));
    for (int k = 1; k < kScan; ++k) {
        const double v = f2(zeta_at(k));
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    double lo = zeta_at(std::max(best - 1, 0));
    double hi = zeta_at(std::min(best + 1, kScan - 1));

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double v1 = f2(x1);
    double v2 = f2(x2);
    for (int it = 0; it < 200 && (hi - lo) > cfg.root_tol * (1.0 + std::abs(x1)); ++it) {
        if (v1 < v2) {
            lo = x1;
            x1 = x2;
            v1 = v2;
            x2 = lo + inv_phi * (hi - lo);
            v2 = f2(x2);
        } else {
            hi = x2;
            x2 = x1;
            v2 = v1;
            x1 = hi - inv_phi * (hi - lo);
            v1 = f2(x1);
        }
    }
    return std::max({best_val, v1, v2});
}

/// Smallest gamma with max_zeta f2*(zeta; gamma) <= pi (~0.0167821).
inline double gamma_critical(const QuadratureConfig& cfg = {}) {
    constexpr int kScan = 64;
    const double log_lo = std::log(1e-4);
    const double log_hi = std::log(1.0);
    auto excess = [&](double g) { return f2_max(g, cfg) - std::numbers::pi; };

    double prev_g = std::exp(log_lo);
    double prev_v = excess(prev_g);
    for (int k = 1; k < kScan; ++k) {
        const double g = std::exp(log_lo + (log_hi - log_lo) * k / (kScan - 1));
        const double v = excess(g);
        if (std::signbit(v) != std::signbit(prev_v)) {
            QuadratureConfig root_cfg = cfg;
            root_cfg.root_tol = std::min(cfg.root_tol, 1e-14);
            return find_root_bracketed(excess, prev_g, g, root_cfg);
        }
        prev_g = g;
        prev_v = v;
    }
    throw NoSignChangeError("gamma_critical: f2_max - pi has no sign change on (1e-4, 1)");
}

}  // namespace eeb

#endif
