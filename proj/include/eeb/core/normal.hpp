#ifndef EEB_CORE_NORMAL_HPP
#define EEB_CORE_NORMAL_HPP

#include <cmath>
#include <numbers>

namespace eeb {

/// Standard normal CDF. erfc keeps full relative accuracy in the lower tail.
inline double norm_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

inline double norm_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace eeb

#endif
