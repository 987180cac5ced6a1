#ifndef EEB_CORE_ROOTS_HPP
#define EEB_CORE_ROOTS_HPP

#include <cmath>
#include <string>
#include <utility>

#include "eeb/core/errors.hpp"
#include "eeb/core/params.hpp"
#include "eeb/core/quadrature.hpp"

namespace eeb {

/// Bisection on [lo, hi] until the bracket is narrower than cfg.root_tol.
/// Deterministic: the same inputs always take the same path.
template <RealFunction G>
double find_root_bracketed(const G& g, double lo, double hi, const QuadratureConfig& cfg) {
    cfg.validate();
    if (lo > hi) std::swap(lo, hi);
    double glo = g(lo);
    double ghi = g(hi);
    if (std::isnan(glo) || std::isnan(ghi)) throw NoSignChangeError("find_root_bracketed: NaN at bracket end");
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (std::signbit(glo) == std::signbit(ghi))
        throw NoSignChangeError("find_root_bracketed: no sign change on [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (hi - lo < cfg.root_tol || mid == lo || mid == hi) return mid;
        const double gm = g(mid);
        if (std::isnan(gm)) throw NumericalError("find_root_bracketed: NaN at " + std::to_string(mid));
        if (gm == 0.0) return mid;
        if (std::signbit(gm) == std::signbit(glo)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    throw MaxIterationsError("find_root_bracketed: no convergence after " + std::to_string(cfg.max_iter) +
                             " iterations");
}

}  // namespace eeb

#endif
