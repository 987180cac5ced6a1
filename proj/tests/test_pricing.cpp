#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "eeb/asymptotics.hpp"
#include "eeb/pricing.hpp"
#include "eeb/zhu.hpp"

using namespace eeb;

namespace {

const MarketParams kP(0.1, 0.3, 100.0);

BoundaryCurve sample(const std::function<double(double)>& f, double T, int m, double E = 100.0) {
    const auto g = TauGrid::quadratic(T, m);
    std::vector<double> v(g.size(), E);
    for (std::size_t i = 1; i < g.size(); ++i) v[i] = f(g[i]);
    return {g, std::move(v), E};
}

const BoundaryCurve& true_curve() {
    static const BoundaryCurve c = sample([](double t) { return rho_ssc_analytic(t, kP); }, 0.1, 200);
    return c;
}

const BoundaryCurve& zhu_curve() {
    static const BoundaryCurve c = sample([](double t) { return rho_zhu(t, kP); }, 0.1, 200);
    return c;
}

}  // namespace

TEST(TransformConsts, SignFlipOfPsorPair) {
    const auto c = PriceTransformConsts::from(kP);
    EXPECT_NEAR(c.alpha_p, -(0.1 / 0.09 - 0.5), 1e-15);
    EXPECT_NEAR(c.beta_p, -(0.05 + 0.09 / 8 + 0.01 / 0.18), 1e-15);
}

TEST(GreenKernel, Normalization) {
    const GreenKernel g{0.3};
    for (double tau : {0.01, 0.1, 1.0}) {
        const double w = 10 * 0.3 * std::sqrt(tau);
        EXPECT_NEAR(integrate_newton_cotes([&](double x) { return g(x, tau); }, -w, w, {}), 1.0, 1e-10);
    }
}

TEST(EuropeanPut, Values) {
    EXPECT_EQ(european_put(80.0, 0.0, kP), 20.0);
    EXPECT_EQ(european_put(120.0, 0.0, kP), 0.0);
    EXPECT_NEAR(european_put(1e6, 1.0, kP), 0.0, 1e-12);
    EXPECT_NEAR(european_put(100.0, 1.0, kP), 7.2178753859826150202, 1e-11);  // mpmath
    EXPECT_THROW(european_put(0.0, 1.0, kP), DomainError);
}

TEST(EuropeanPut, PutCallParity) {
    // C - P = S - E e^{-r tau}, with C from the call formula
    const double S = 93.0, tau = 0.7;
    const double sd = 0.3 * std::sqrt(tau);
    const double d1 = (std::log(S / 100.0) + (0.1 + 0.045) * tau) / sd;
    const double call = S * norm_cdf(d1) - 100.0 * std::exp(-0.1 * tau) * norm_cdf(d1 - sd);
    EXPECT_NEAR(call - european_put(S, tau, kP), S - 100.0 * std::exp(-0.1 * tau), 1e-11);
}

TEST(EuropeanPut, BelowAmericanAtBoundary) {
    for (double tau : {1e-4, 1e-3, 0.01, 0.1}) {
        const double rho = true_curve()(tau);
        EXPECT_LT(european_put(rho, tau, kP), 100.0 - rho);
    }
}

TEST(PriceGap, IdenticalCurvesGiveZero) {
    EXPECT_EQ(price_gap_at_boundary(true_curve(), true_curve(), 0.05, kP), 0.0);
    EXPECT_EQ(price_gap_full(true_curve(), true_curve(), 90.0, 0.05, kP), 0.0);
    EXPECT_EQ(mispricing_err(true_curve(), true_curve(), 0.05, kP), 0.0);
    EXPECT_EQ(boundary_rel_err(true_curve(), true_curve(), 0.05), 0.0);
}

TEST(PriceGap, NonNegative) {
    for (double tau : {1e-4, 1e-3, 0.02, 0.1}) {
        EXPECT_GE(price_gap_at_boundary(true_curve(), zhu_curve(), tau, kP), 0.0);
        EXPECT_GE(price_gap_at_boundary(zhu_curve(), true_curve(), tau, kP), 0.0);
        EXPECT_GE(price_gap_full(true_curve(), zhu_curve(), 95.0, 0.1 - tau, kP), 0.0);
    }
}

TEST(PriceGap, OffCurveIsDomainError) {
    EXPECT_THROW(price_gap_at_boundary(true_curve(), zhu_curve(), 0.2, kP), DomainError);
    EXPECT_THROW(boundary_rel_err(true_curve(), zhu_curve(), 0.2), DomainError);
    EXPECT_THROW(price_gap_full(true_curve(), zhu_curve(), 95.0, 0.2, kP), DomainError);
}

TEST(PriceGap, DominanceOrdering) {
    // rho_app1 <= rho_app2 <= rho everywhere
    const auto& rho = true_curve();
    const auto app2 = sample([&](double t) { return rho(t) - 0.2 * std::sqrt(t); }, 0.1, 200);
    const auto app1 = sample([&](double t) { return rho(t) - 0.5 * std::sqrt(t); }, 0.1, 200);
    for (double tau : {1e-3, 0.01, 0.1})
        EXPECT_GE(price_gap_at_boundary(rho, app1, tau, kP), price_gap_at_boundary(rho, app2, tau, kP));
}

TEST(PriceGap, EndpointRefinementInvariance) {
    QuadratureConfig c1;
    QuadratureConfig c2;
    c2.finite_subintervals = 2 * c1.finite_subintervals;
    EXPECT_NEAR(price_gap_at_boundary(true_curve(), zhu_curve(), 0.05, kP, c1),
                price_gap_at_boundary(true_curve(), zhu_curve(), 0.05, kP, c2), 1e-8 * 100.0);
}

TEST(PriceGap, FullFormulaAgreesAtBoundary) {
    const auto& rho = true_curve();
    const double T = rho.horizon();
    for (double tau : {0.001, 0.01, 0.1}) {
        const double a = price_gap_at_boundary(rho, zhu_curve(), tau, kP);
        const double b = price_gap_full(rho, zhu_curve(), rho(tau), T - tau, kP);
        EXPECT_NEAR(a, b, 1e-6 * 100.0) << "tau=" << tau;
    }
}

TEST(MispricingErr, Finite) {
    const double e = mispricing_err(true_curve(), zhu_curve(), 0.004, kP);
    EXPECT_GT(e, 0.0);
    EXPECT_TRUE(std::isfinite(e));
    EXPECT_THROW(mispricing_err(true_curve(), zhu_curve(), 0.0, kP), DomainError);
}

TEST(MispricingErr, DegeneratePremium) {
    // a boundary at the strike leaves no early-exercise premium
    const auto flat = sample([](double) { return 100.0; }, 0.1, 10);
    EXPECT_THROW(mispricing_err(flat, flat, 0.05, kP), NumericalError);
}

TEST(BoundaryRelErr, SignedValue) {
    const auto a = sample([](double) { return 80.0; }, 1.0, 10);
    const auto b = sample([](double) { return 78.0; }, 1.0, 10);
    EXPECT_NEAR(boundary_rel_err(a, b, 1.0), 0.025, 1e-15);
    EXPECT_NEAR(boundary_rel_err(b, a, 1.0), -2.0 / 78.0, 1e-15);
    // table point: (76.6695 - 75.4580) / 76.6695
    const auto psor = sample([](double) { return 76.6695; }, 1.0, 4);
    const auto zhu = sample([](double) { return 75.4580; }, 1.0, 4);
    EXPECT_NEAR(boundary_rel_err(psor, zhu, 1.0), 0.0158, 1e-4);
}
