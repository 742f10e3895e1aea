#include "stdd/experiments.hpp"
#include "stdd/interface_solver.hpp"
#include "small_problem.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace stdd;
using stdd::testing::SmallOptions;
using stdd::testing::small_scenario;

namespace {

double max_difference_to_monodomain(const Scenario& sc, const Evaluation& ev) {
    const Evaluation mono = run_monodomain(sc, sc.grids[0], {});
    double diff = 0.0, scale = 0.0;
    for (int s = 0; s < sc.dd.size(); ++s) {
        const auto ref = sc.dd.restrict_cells(s, mono.final_c[0]);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            diff = std::max(diff, std::abs(ref[k] - ev.final_c[s][k]));
            scale = std::max(scale, std::abs(ref[k]));
        }
    }
    return diff / scale;
}

} // namespace

TEST(InterfaceSolver, MethodNames) {
    for (Method m : {Method::schur, Method::schur_nn, Method::oswr_jacobi, Method::oswr_gmres})
        EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_THROW(parse_method("nn"), std::invalid_argument);
    EXPECT_EQ(solves_per_iteration(Method::schur_nn), 2);
    EXPECT_EQ(solves_per_iteration(Method::oswr_gmres), 1);
}

class AllMethods : public ::testing::TestWithParam<std::tuple<Method, bool>> {};

TEST_P(AllMethods, ReproduceTheMonodomainScheme) {
    const auto [method, quad] = GetParam();
    SmallOptions o;
    o.quad = quad;
    o.d_right = 0.005;
    const Scenario sc = small_scenario(o);
    MethodConfig cfg = sc.spec.method;
    cfg.method = method;
    cfg.tol = 1e-11;
    const RunResult r = run_single(sc, cfg);
    ASSERT_TRUE(r.solution.stats.converged) << r.solution.stats.stop_reason;
    EXPECT_LT(max_difference_to_monodomain(sc, r.evaluation), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Small, AllMethods,
                         ::testing::Combine(::testing::Values(Method::schur, Method::schur_nn, Method::oswr_jacobi,
                                                              Method::oswr_gmres),
                                            ::testing::Bool()),
                         [](const auto& info) {
                             std::string name = to_string(std::get<0>(info.param));
                             std::replace(name.begin(), name.end(), '-', '_');
                             return name + (std::get<1>(info.param) ? "_quad" : "_halves");
                         });

TEST(InterfaceSolver, WeightsFollowTheDiffusionRatio) {
    SmallOptions o;
    o.d_right = 0.002;
    const Scenario sc = small_scenario(o);
    const Multidomain md(sc.problem(), sc.spec.method);
    ASSERT_EQ(md.dd().interfaces().size(), 1u);
    for (double w : md.weight_a(0)) EXPECT_NEAR(w, 10.0 / 11.0, 1e-14);
    const auto a = md.optimized_alpha(0);
    EXPECT_GT(a[0], 0.0);
    EXPECT_GT(a[1], 0.0);
}

TEST(InterfaceSolver, NeumannNeumannHelpsPureDiffusion) {
    SmallOptions o;
    o.ux = o.uy = 0.0;
    o.d_right = 0.002;
    o.nx = o.ny = 16;
    const Scenario sc = small_scenario(o);
    MethodConfig cfg = sc.spec.method;
    cfg.tol = 1e-8;
    cfg.method = Method::schur;
    const auto plain = run_single(sc, cfg).solution.stats;
    cfg.method = Method::schur_nn;
    const auto nn = run_single(sc, cfg).solution.stats;
    ASSERT_TRUE(plain.converged && nn.converged);
    EXPECT_LT(nn.iterations, plain.iterations);
    EXPECT_EQ(nn.subdomain_solves, 2L * nn.iterations);
    EXPECT_EQ(plain.subdomain_solves, plain.iterations);
}

TEST(InterfaceSolver, ZeroProblemNeedsNoIteration) {
    SmallOptions o;
    o.bump = false;
    o.source = false;
    const Scenario sc = small_scenario(o);
    for (Method m : {Method::schur, Method::oswr_jacobi, Method::oswr_gmres}) {
        MethodConfig cfg = sc.spec.method;
        cfg.method = m;
        const auto r = run_single(sc, cfg);
        EXPECT_TRUE(r.solution.stats.converged);
        // Jacobi measures the change of one sweep, so it always performs one.
        EXPECT_EQ(r.solution.stats.iterations, m == Method::oswr_jacobi ? 1 : 0) << to_string(m);
        for (const auto& c : r.evaluation.final_c)
            for (double v : c) EXPECT_EQ(v, 0.0);
    }
}

TEST(InterfaceSolver, WarmStartedWindowsAreNotSlower) {
    SmallOptions o;
    o.d_right = 0.005;
    const Scenario sc = small_scenario(o);
    MethodConfig cfg = sc.spec.method;
    cfg.tol = 1e-6;
    const auto camp = run_window_campaign(sc, cfg, 3);
    ASSERT_EQ(camp.warm.windows.size(), 3u);
    EXPECT_EQ(camp.warm.windows[0].stats.iterations, camp.cold.windows[0].stats.iterations);
    for (int w = 1; w < 3; ++w) EXPECT_LE(camp.warm.windows[w].stats.iterations, camp.cold.windows[w].stats.iterations);
}

TEST(InterfaceSolver, ConvergedSolutionHasSmallTransmissionResiduals) {
    SmallOptions o;
    o.d_right = 0.002;
    const Scenario sc = small_scenario(o);
    for (Method m : {Method::schur, Method::oswr_gmres}) {
        MethodConfig cfg = sc.spec.method;
        cfg.method = m;
        cfg.tol = 1e-12;
        const Multidomain md(sc.problem(), cfg);
        const auto sys = make_system(md, m);
        const auto data = sc.first_window();
        const std::vector<double> x0(sys->size(), 0.0);
        const auto sol = solve_interface(*sys, m, data, x0, cfg);
        ASSERT_TRUE(sol.stats.converged);
        const auto tr = transmission_residuals(*sys, sol.x, data);
        EXPECT_LT(tr.relative_flux(), 1e-9) << to_string(m);
        EXPECT_LT(tr.relative_trace(), 1e-9) << to_string(m);
    }
}
