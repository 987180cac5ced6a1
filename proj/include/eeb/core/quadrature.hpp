#ifndef EEB_CORE_QUADRATURE_HPP
#define EEB_CORE_QUADRATURE_HPP

#include <cmath>
#include <concepts>
#include <string>

#include "eeb/core/errors.hpp"
#include "eeb/core/params.hpp"

namespace eeb {

template <typename F>
concept RealFunction = std::invocable<const F&, double> &&
                       std::convertible_to<std::invoke_result_t<const F&, double>, double>;

namespace detail {

// Composite closed 5-point Newton-Cotes (Boole) rule with `subintervals`
// equal steps; `node` maps the node index to its abscissa so callers can
// move an endpoint without rebuilding the weights.
template <RealFunction F, typename Node>
double boole_sum(const F& f, double a, double b, int subintervals, const Node& node) {
    const double h = (b - a) / subintervals;
    double sum = 0.0;
    for (int k = 0; k <= subintervals; ++k) {
        double w;
        if (k == 0 || k == subintervals) {
            w = 7.0;
        } else {
            switch (k % 4) {
                case 0: w = 14.0; break;
                case 2: w = 12.0; break;
                default: w = 32.0; break;
            }
        }
        const double x = node(k);
        const double fx = static_cast<double>(f(x));
        if (!std::isfinite(fx)) throw QuadratureNodeError(x);
        sum += w * fx;
    }
    return sum * 2.0 * h / 45.0;
}

}  // namespace detail

/// Composite closed Boole rule on [a, b] with cfg.finite_subintervals steps.
/// Exact for polynomials of degree <= 5 on every panel.
template <RealFunction F>
double integrate_newton_cotes(const F& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(a <= b)) throw DomainError("integrate_newton_cotes: requires a <= b");
    if (a == b) return 0.0;
    const int n = cfg.finite_subintervals;
    const double h = (b - a) / n;
    return detail::boole_sum(f, a, b, n, [&](int k) { return k == n ? b : a + k * h; });
}

struct SemiInfiniteResult {
    double value;
    double tail_bound;  // estimate of |integral| beyond the truncation point
};

/// Integral over [0, inf) truncated at cfg.semi_inf_truncation. The tail is
/// estimated by integrating |f| over [Z, 2Z]; a bound at or above 10*root_tol
/// is reported as TailTooHeavyError.
template <RealFunction F>
SemiInfiniteResult integrate_semi_infinite(const F& f, const QuadratureConfig& cfg) {
    cfg.validate();
    const double z = cfg.semi_inf_truncation;
    SemiInfiniteResult out{integrate_newton_cotes(f, 0.0, z, cfg), 0.0};

    QuadratureConfig tail_cfg = cfg;
    tail_cfg.finite_subintervals = round_up_to_panels(cfg.finite_subintervals / 4);
    out.tail_bound = integrate_newton_cotes([&](double x) { return std::abs(static_cast<double>(f(x))); }, z,
                                            2.0 * z, tail_cfg);
    if (!(out.tail_bound < 10.0 * cfg.root_tol)) throw TailTooHeavyError(z, out.tail_bound);
    return out;
}

}  // namespace eeb

#endif
