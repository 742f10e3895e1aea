#include "stdd/time_projection.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace stdd;

TEST(TimeGrid, StepsAndAdvectionGrid) {
    const TimeGrid g(2.0, 4, 3);
    EXPECT_DOUBLE_EQ(g.step(), 0.5);
    EXPECT_DOUBLE_EQ(g.substep(), 0.5 / 3);
    EXPECT_EQ(g.advection_slabs(), 12);
    EXPECT_EQ(g.advection_grid(), TimeGrid(2.0, 12, 1));
    EXPECT_DOUBLE_EQ(g.slab_start(3), 1.5);
    EXPECT_THROW(TimeGrid(1.0, 0), std::invalid_argument);
}

TEST(Projection, HandComputedCases) {
    const std::vector<double> two{2.0, 4.0};
    EXPECT_DOUBLE_EQ(project(TimeGrid(1.0, 2), two, TimeGrid(1.0, 1), 1)[0], 3.0);
    const std::vector<double> a{1.0, 3.0};
    const auto onto3 = project(TimeGrid(1.0, 2), a, TimeGrid(1.0, 3), 1);
    EXPECT_NEAR(onto3[0], 1.0, 1e-15);
    EXPECT_NEAR(onto3[1], 2.0, 1e-15);
    EXPECT_NEAR(onto3[2], 3.0, 1e-15);
    const std::vector<double> b{1.0, 3.0, 5.0};
    const auto onto2 = project(TimeGrid(1.0, 3), b, TimeGrid(1.0, 2), 1);
    EXPECT_NEAR(onto2[0], 5.0 / 3, 1e-15);
    EXPECT_NEAR(onto2[1], 13.0 / 3, 1e-15);
}

TEST(Projection, ConformingIsIdentityAndWidthIsColumnwise) {
    const std::vector<double> v{1, 2, 3, 4, 5, 6}; // 3 slabs x 2 columns
    EXPECT_EQ(project(TimeGrid(1.0, 3), v, TimeGrid(1.0, 3), 2), v);
    const auto p = project(TimeGrid(1.0, 3), v, TimeGrid(1.0, 1), 2);
    EXPECT_NEAR(p[0], 3.0, 1e-15);
    EXPECT_NEAR(p[1], 4.0, 1e-15);
}

TEST(Projection, ConservesTheIntegral) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const TimeGrid from(3.0, 7), to(3.0, 5);
    std::vector<double> v(7);
    for (double& x : v) x = u(gen);
    const auto p = project(from, v, to, 1);
    const double before = std::accumulate(v.begin(), v.end(), 0.0) * from.step();
    const double after = std::accumulate(p.begin(), p.end(), 0.0) * to.step();
    EXPECT_NEAR(before, after, 1e-14);
}

TEST(Projection, BreakpointVersionAgreesWithUniform) {
    const std::vector<double> v{0.5, -1.0, 2.0, 4.0};
    const std::vector<double> fb{0.0, 0.25, 0.5, 0.75, 1.0}, tb{0.0, 1.0 / 3, 2.0 / 3, 1.0};
    const auto p1 = project(fb, v, tb, 1);
    const auto p2 = project(TimeGrid(1.0, 4), v, TimeGrid(1.0, 3), 1);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(p1[i], p2[i], 1e-14);
}

TEST(Projection, StridedWritesIntoItsRegion) {
    const std::vector<double> v{1.0, 3.0};
    std::vector<double> out(6, 0.0);
    out[0] = -9.0; // untouched column, accumulation elsewhere starts from 0
    project_strided(TimeGrid(1.0, 2), v, 1, 0, TimeGrid(1.0, 3), out, 2, 1, 1);
    EXPECT_DOUBLE_EQ(out[0], -9.0);
    EXPECT_NEAR(out[1], 1.0, 1e-15);
    EXPECT_NEAR(out[3], 2.0, 1e-15);
    EXPECT_NEAR(out[5], 3.0, 1e-15);
}

TEST(Projection, OverlapsPartitionTheWindow) {
    const auto ov = overlaps(TimeGrid(2.0, 4), TimeGrid(2.0, 6));
    double total = 0.0;
    for (const auto& o : ov) {
        EXPECT_GT(o.length, 0.0);
        total += o.length;
    }
    EXPECT_NEAR(total, 2.0, 1e-15);
    EXPECT_EQ(ov.size(), 4u + 6u - 2u);
    EXPECT_THROW(overlaps(TimeGrid(1.0, 2), TimeGrid(2.0, 2)), std::invalid_argument);
}
