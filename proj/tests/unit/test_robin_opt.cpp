#include "stdd/robin_opt.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace stdd;

TEST(RobinFactor, VanishesForTheExactTransparentOperator) {
    const SidePair p{1.0, 0.02, 1.0, 0.002};
    for (double w : {0.1, 3.0, 400.0}) {
        const auto s1 = sigma(w, p.phi1, p.d1), s2 = sigma(w, p.phi2, p.d2);
        EXPECT_NEAR(convergence_factor(w, p, s2, std::complex<double>(1.0)), 0.0, 1e-15);
        EXPECT_NEAR(convergence_factor(w, p, std::complex<double>(1.0), s1), 0.0, 1e-15);
    }
}

TEST(RobinFactor, SigmaPrincipalBranch) {
    const auto s = sigma(2.0, 0.5, 4.0); // sqrt(4i) = sqrt(2)(1 + i)
    EXPECT_NEAR(s.real(), std::numbers::sqrt2, 1e-14);
    EXPECT_NEAR(s.imag(), std::numbers::sqrt2, 1e-14);
}

TEST(RobinFactor, BandAndRejections) {
    const auto b = frequency_band(1.0, 0.01);
    EXPECT_DOUBLE_EQ(b.omega_min, std::numbers::pi);
    EXPECT_DOUBLE_EQ(b.omega_max, 100 * std::numbers::pi);
    EXPECT_THROW(frequency_band(1.0, 2.0), std::invalid_argument);
    EXPECT_THROW(optimize_robin({1.0, 0.0, 1.0, 1.0}, b), std::invalid_argument);
    EXPECT_THROW(optimize_robin({}, {1.0, 1.0}), std::invalid_argument);
}

TEST(RobinOptimizer, IsLocallyOptimalAndContracting) {
    const SidePair p{1.0, 0.02, 1.0, 0.002};
    const auto band = frequency_band(1.0, 1.0 / 100);
    const auto opt = optimize_robin(p, band);
    EXPECT_GT(opt.alpha12, 0.0);
    EXPECT_GT(opt.alpha21, 0.0);
    EXPECT_LT(opt.max_rho, 1.0);
    EXPECT_NEAR(opt.max_rho, max_factor(p, band, opt.alpha12, opt.alpha21), 1e-12);
    for (double f1 : {0.95, 1.0, 1.05})
        for (double f2 : {0.95, 1.0, 1.05})
            EXPECT_GE(max_factor(p, band, f1 * opt.alpha12, f2 * opt.alpha21), opt.max_rho - 1e-9);
}

TEST(RobinOptimizer, SwappingTheSidesSwapsTheParameters) {
    const SidePair p{0.3, 0.05, 0.8, 0.001};
    const SidePair q{p.phi2, p.d2, p.phi1, p.d1};
    const auto band = frequency_band(2.0, 0.01);
    const auto a = optimize_robin(p, band), b = optimize_robin(q, band);
    EXPECT_NEAR(a.max_rho, b.max_rho, 1e-6);
    EXPECT_NEAR(a.alpha12 / b.alpha21, 1.0, 1e-2);
    EXPECT_NEAR(a.alpha21 / b.alpha12, 1.0, 1e-2);
}
