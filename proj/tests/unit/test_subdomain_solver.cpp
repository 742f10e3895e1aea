#include "stdd/subdomain_solver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stdd;

namespace {

struct Fixture {
    StructuredMesh mesh = StructuredMesh::uniform(6, 4, 0.0, 1.0, 0.0, 1.0);
    Decomposition dd{mesh, {CellBox{0, 3, 0, 4}, CellBox{3, 6, 0, 4}}};
    std::vector<double> d, phi, u;
    Fixture() {
        std::mt19937_64 gen(2);
        std::uniform_real_distribution<double> r(0.5, 1.5);
        for (int k = 0; k < mesh.num_cells(); ++k) {
            d.push_back(0.01 * r(gen));
            phi.push_back(r(gen) * 0.5);
        }
        u.assign(mesh.num_edges(), 0.0);
        for (int e = 0; e < mesh.num_vertical_edges(); ++e) u[e] = 0.3;
        for (int e = mesh.num_vertical_edges(); e < mesh.num_edges(); ++e) u[e] = -0.2;
    }
    SubdomainSolver solver(int s, int steps, int substeps) const {
        const std::array<EdgeCondition, 4> bc{EdgeCondition::dirichlet, EdgeCondition::dirichlet,
                                              EdgeCondition::neumann, EdgeCondition::dirichlet};
        return SubdomainSolver(make_subdomain_model(dd, s, d, phi, u, bc, TimeGrid(1.0, steps, substeps)));
    }
};

InterfaceTrace random_trace(const TimeGrid& g, int width, std::uint64_t seed) {
    auto t = InterfaceTrace::zeros(g, width);
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> r(-1.0, 1.0);
    for (double& v : t.values) v = r(gen);
    return t;
}

} // namespace

TEST(SubdomainSolver, DirichletTraceEqualsData) {
    const Fixture fx;
    const auto sv = fx.solver(1, 5, 2);
    const TimeGrid& g = sv.model().grid;
    const auto la = random_trace(g.advection_grid(), sv.num_slots(), 1);
    const auto lam = random_trace(g, sv.num_slots(), 2);
    const auto st = sv.solve_dirichlet(la, lam, {});
    for (std::size_t i = 0; i < lam.values.size(); ++i) EXPECT_DOUBLE_EQ(extract_Tr(st).values[i], lam.values[i]);
    EXPECT_EQ(sv.solves(), 1);
}

TEST(SubdomainSolver, NeumannAndRobinInvertDirichlet) {
    const Fixture fx;
    for (int s = 0; s < 2; ++s) {
        const auto sv = fx.solver(s, 4, 3);
        const TimeGrid& g = sv.model().grid;
        const int ns = sv.num_slots();
        const auto la = random_trace(g.advection_grid(), ns, 3);
        const auto lam = random_trace(g, ns, 4);
        const auto dir = sv.solve_dirichlet(la, lam, {});

        const auto neu = sv.solve_neumann(la, extract_F(dir));
        for (std::size_t i = 0; i < lam.values.size(); ++i) EXPECT_NEAR(extract_Tr(neu).values[i], lam.values[i], 1e-11);

        const std::vector<double> alpha(ns, 2.5);
        auto xi = InterfaceTrace::zeros(g, ns);
        for (std::size_t i = 0; i < xi.values.size(); ++i) xi.values[i] = 2.5 * lam.values[i] - extract_F(dir).values[i];
        const auto rob = sv.solve_robin(la, xi, alpha, {});
        for (std::size_t i = 0; i < lam.values.size(); ++i) {
            EXPECT_NEAR(extract_Tr(rob).values[i], lam.values[i], 1e-11);
            EXPECT_NEAR(extract_F(rob).values[i], extract_F(dir).values[i], 1e-10);
        }
    }
}

TEST(SubdomainSolver, UpwindValuesFollowTheFlow) {
    const Fixture fx;
    // u.x > 0: the interface is outflow for subdomain 0 and inflow for subdomain 1.
    const auto left = fx.solver(0, 3, 3), right = fx.solver(1, 3, 3);
    const TimeGrid& g = right.model().grid;
    const int ns = right.num_slots();
    const auto la = random_trace(g.advection_grid(), ns, 5);
    const auto lam = InterfaceTrace::zeros(g, ns);
    const auto st_r = right.solve_dirichlet(la, lam, {});
    EXPECT_EQ(st_r.upwind.values, la.values);
    for (double v : extract_H(right.model(), st_r).values) EXPECT_EQ(v, 0.0);

    std::vector<double> c0(left.model().mesh.num_cells(), 1.0);
    const auto st_l = left.solve_dirichlet(la, lam, {c0});
    const auto h = extract_H(left.model(), st_l);
    // first sub-step: the upwind cell still holds the initial value
    for (int s = 0; s < ns; ++s) EXPECT_DOUBLE_EQ(h.slab(0)[s], 1.0);
}

TEST(SubdomainSolver, KeepsFieldsAndRejectsMismatchedTraces) {
    const Fixture fx;
    const auto sv = fx.solver(0, 3, 3);
    const TimeGrid& g = sv.model().grid;
    const int ns = sv.num_slots();
    int calls = 0;
    SolveOptions opts;
    opts.keep_fields = true;
    opts.observer = [&](int n, const DiffusionStep&) { EXPECT_EQ(n, ++calls); };
    const auto st = sv.solve_dirichlet(InterfaceTrace::zeros(g.advection_grid(), ns), InterfaceTrace::zeros(g, ns), {}, opts);
    EXPECT_EQ(calls, 3);
    EXPECT_EQ(st.c.size(), 3u);
    EXPECT_EQ(st.c.back(), st.final_c);
    EXPECT_THROW(sv.solve_dirichlet(InterfaceTrace::zeros(TimeGrid(1.0, 2), ns), InterfaceTrace::zeros(g, ns), {}),
                 std::invalid_argument);
    const std::vector<double> bad_alpha(ns, -1.0);
    EXPECT_THROW(sv.solve_robin(InterfaceTrace::zeros(g.advection_grid(), ns), InterfaceTrace::zeros(g, ns), bad_alpha, {}),
                 std::invalid_argument);
}

TEST(SubdomainSolver, RobinOutgoingDatum) {
    // B = F + (a_ji/a_ij)(xi + F); with xi = a_ij*lam - F this is F + a_ji*lam.
    auto st = SubdomainState{};
    const TimeGrid g(1.0, 1);
    st.flux = InterfaceTrace::zeros(g, 1);
    st.flux.values[0] = 0.4;
    auto xi = InterfaceTrace::zeros(g, 1);
    xi.values[0] = 2.0 * 3.0 - 0.4;
    const std::vector<double> aij{2.0}, aji{5.0};
    EXPECT_NEAR(extract_B(st, xi, aij, aji).values[0], 0.4 + 5.0 * 3.0, 1e-14);
}
