#include "stdd/experiments.hpp"
#include "small_problem.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stdd;
using stdd::testing::SmallOptions;
using stdd::testing::small_scenario;

TEST(Experiments, LogLogSlope) {
    const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e;
    for (double x : h) e.push_back(3.0 * x * x);
    ASSERT_TRUE(loglog_slope(h, e).has_value());
    EXPECT_NEAR(*loglog_slope(h, e), 2.0, 1e-12);
    EXPECT_FALSE(loglog_slope({0.1}, {1.0}).has_value());
    EXPECT_FALSE(loglog_slope({0.1, 0.2}, {0.0, 1.0}).has_value());
}

TEST(Experiments, StandardTimeGrids) {
    const auto f = standard_time_grids(9, 4, 250, 50);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0].steps, std::vector<int>(9, 250));
    EXPECT_EQ(f[1].steps[4], 250);
    EXPECT_EQ(f[1].steps[0], 50);
    EXPECT_EQ(f[2].steps[4], 50);
    EXPECT_EQ(f[2].steps[0], 250);
    EXPECT_EQ(f[3].steps, std::vector<int>(9, 50));
}

TEST(Experiments, RandomGuessIsSeeded) {
    EXPECT_EQ(random_guess(10, 3), random_guess(10, 3));
    EXPECT_NE(random_guess(10, 3), random_guess(10, 4));
    for (double v : random_guess(100, 1)) {
        EXPECT_GE(v, -1.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Experiments, SolveCountsAreDeterministic) {
    SmallOptions o;
    o.d_right = 0.002;
    o.steps_right = 8;
    const Scenario sc = small_scenario(o);
    MethodConfig cfg = sc.spec.method;
    cfg.method = Method::oswr_gmres;
    const auto a = count_solves(sc, cfg, 9, 1e-6, 100);
    const auto b = count_solves(sc, cfg, 9, 1e-6, 100);
    EXPECT_GT(a.solves_c, 0);
    EXPECT_GT(a.solves_r, 0);
    EXPECT_EQ(a.solves_c, b.solves_c);
    EXPECT_EQ(a.error_c, b.error_c);
    EXPECT_DOUBLE_EQ(a.error_c.front(), 1.0);
    EXPECT_LE(a.error_c[a.solves_c], 1e-6);
}

TEST(Experiments, NonconformingTimeGridsConvergeAtFirstOrder) {
    SmallOptions o;
    o.d_right = 0.005;
    o.source = false;
    const Scenario sc = small_scenario(o);
    MethodConfig cfg = sc.spec.method;
    cfg.tol = 1e-10;
    const std::vector<TimeGridFamily> fam{{"nonconforming", {6, 4}}};
    const auto s = run_convergence_in_time(sc, fam, 3, 192, cfg);
    ASSERT_EQ(s.size(), 1u);
    ASSERT_EQ(s[0].points.size(), 3u);
    ASSERT_TRUE(s[0].order_c.has_value());
    for (std::size_t i = 1; i < 3; ++i) EXPECT_LT(s[0].points[i].error.error_c, s[0].points[i - 1].error.error_c);
    EXPECT_GT(*s[0].order_c, 0.7);
    EXPECT_LT(*s[0].order_c, 1.3);
}

TEST(Experiments, SweepContainsTheOptimizedPair) {
    SmallOptions o;
    o.d_right = 0.002;
    const Scenario sc = small_scenario(o);
    const auto res = run_alpha_sweep(sc, 4, 5, 3);
    EXPECT_EQ(res.points.size(), 16u);
    EXPECT_GT(res.optimized.alpha12, 0.0);
    double mn = INFINITY;
    for (const auto& p : res.points) mn = std::min(mn, p.error_r);
    EXPECT_EQ(mn, res.min_error_r);
    EXPECT_LT(res.optimized.error_r, 1.0);
    SmallOptions q;
    q.quad = true;
    EXPECT_THROW(run_alpha_sweep(small_scenario(q), 2, 1, 1), std::invalid_argument);
}
