#include "stdd/error_metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace stdd;

namespace {

void fill_random(FieldHistory& h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t p = 0; p < h.layout.parts.size(); ++p) {
        const auto& part = h.layout.parts[p];
        for (int n = 0; n < part.grid.slabs(); ++n) {
            h.c[p][n].resize(part.cell_to_global.size());
            h.r[p][n].resize(part.edge_to_global.size());
            for (double& v : h.c[p][n]) v = u(gen);
            for (double& v : h.r[p][n]) v = u(gen);
        }
    }
}

// Global cell value at time t (inside a slab, never on a breakpoint).
double sample_c(const FieldHistory& h, int global_cell, double t) {
    for (std::size_t p = 0; p < h.layout.parts.size(); ++p) {
        const auto& part = h.layout.parts[p];
        for (std::size_t k = 0; k < part.cell_to_global.size(); ++k)
            if (part.cell_to_global[k] == global_cell)
                return h.c[p][static_cast<int>(t / part.grid.step())][k];
    }
    return NAN;
}

double sample_r(const FieldHistory& h, int global_edge, double t) {
    const auto& part = h.layout.parts[0];
    for (std::size_t e = 0; e < part.edge_to_global.size(); ++e)
        if (part.edge_to_global[e] == global_edge) return h.r[0][static_cast<int>(t / part.grid.step())][e];
    return NAN;
}

} // namespace

TEST(ErrorMetrics, IdenticalFieldsGiveZeroAndNormsMatch) {
    const auto m = StructuredMesh::uniform(3, 2, 0.0, 1.0, 0.0, 1.0);
    FieldHistory a(FieldLayout::monodomain(m, TimeGrid(1.0, 4)));
    fill_random(a, 1);
    const auto rep = compute_error(a, a);
    EXPECT_EQ(rep.error_c, 0.0);
    EXPECT_EQ(rep.error_r, 0.0);
    NormAccumulator norms(a.layout);
    for (int n = 0; n < 4; ++n) norms.add(0, n + 1, DiffusionStep{a.c[0][n], a.r[0][n], {}});
    EXPECT_NEAR(norms.norm_c(), rep.norm_c, 1e-14);
    EXPECT_NEAR(norms.norm_r(), rep.norm_r, 1e-14);
}

TEST(ErrorMetrics, ConstantOffset) {
    const StructuredMesh m({0.0, 0.2, 1.0}, {0.0, 0.5, 2.0});
    const double window = 3.0, delta = 0.37;
    FieldHistory a(FieldLayout::monodomain(m, TimeGrid(window, 3)));
    FieldHistory b(FieldLayout::monodomain(m, TimeGrid(window, 5)));
    for (int n = 0; n < 3; ++n) {
        a.c[0][n].assign(m.num_cells(), 1.0 + delta);
        a.r[0][n].assign(m.num_edges(), -2.0 + delta);
    }
    for (int n = 0; n < 5; ++n) {
        b.c[0][n].assign(m.num_cells(), 1.0);
        b.r[0][n].assign(m.num_edges(), -2.0);
    }
    const auto rep = compute_error(a, b);
    const double area = 2.0;
    EXPECT_NEAR(rep.error_c, delta * std::sqrt(window * area), 1e-14);
    // flux weights add up to the area once per direction
    EXPECT_NEAR(rep.error_r, delta * std::sqrt(window * 2 * area), 1e-14);
}

TEST(ErrorMetrics, DifferentDecompositionsAndGridsAgainstSampling) {
    const StructuredMesh m({0.0, 0.3, 0.5, 1.0}, {0.0, 0.4, 1.0});
    const Decomposition dd(m, {CellBox{0, 1, 0, 2}, CellBox{1, 3, 0, 2}});
    const double window = 2.0;
    FieldHistory cand(FieldLayout::multidomain(dd, {TimeGrid(window, 3), TimeGrid(window, 4)}));
    FieldHistory ref(FieldLayout::monodomain(m, TimeGrid(window, 6)));
    fill_random(cand, 7);
    fill_random(ref, 8);
    // Breakpoints of 3, 4 and 6 slabs all lie on the 12-slab grid.
    double sum = 0.0, sum_ref = 0.0;
    const int fine = 12;
    const double dt = window / fine;
    for (int q = 0; q < fine; ++q) {
        const double t = (q + 0.5) * dt;
        for (int k = 0; k < m.num_cells(); ++k) {
            const double diff = sample_c(cand, k, t) - sample_c(ref, k, t);
            sum += dt * m.cell_area(k) * diff * diff;
            sum_ref += dt * m.cell_area(k) * std::pow(sample_c(ref, k, t), 2);
        }
    }
    const auto rep = compute_error(cand, ref);
    EXPECT_NEAR(rep.error_c, std::sqrt(sum), 1e-13);
    EXPECT_NEAR(rep.norm_c, std::sqrt(sum_ref), 1e-13);
}

TEST(ErrorMetrics, FluxErrorAcrossTimeGridsAgainstSampling) {
    const StructuredMesh m({0.0, 0.3, 1.0}, {0.0, 0.6, 1.0});
    FieldHistory a(FieldLayout::monodomain(m, TimeGrid(1.0, 2)));
    FieldHistory b(FieldLayout::monodomain(m, TimeGrid(1.0, 3)));
    fill_random(a, 3);
    fill_random(b, 4);
    double sum = 0.0;
    for (int q = 0; q < 6; ++q) {
        const double t = (q + 0.5) / 6;
        for (int e = 0; e < m.num_edges(); ++e) {
            const double diff = sample_r(a, e, t) - sample_r(b, e, t);
            sum += m.flux_weight(e) * diff * diff / 6;
        }
    }
    EXPECT_NEAR(compute_error(a, b).error_r, std::sqrt(sum), 1e-13);
}

TEST(ErrorMetrics, TriangleInequalityAndHomogeneity) {
    const auto m = StructuredMesh::uniform(4, 3, 0.0, 1.0, 0.0, 1.0);
    FieldHistory a(FieldLayout::monodomain(m, TimeGrid(1.0, 5))), b(FieldLayout::monodomain(m, TimeGrid(1.0, 3))),
        c(FieldLayout::monodomain(m, TimeGrid(1.0, 2)));
    fill_random(a, 11);
    fill_random(b, 12);
    fill_random(c, 13);
    const double ab = compute_error(a, b).error_c, bc = compute_error(b, c).error_c, ac = compute_error(a, c).error_c;
    EXPECT_LE(ac, ab + bc + 1e-14);
    FieldHistory a2 = a, b2 = b;
    for (auto& s : a2.c[0])
        for (double& v : s) v *= -3.0;
    for (auto& s : b2.c[0])
        for (double& v : s) v *= -3.0;
    EXPECT_NEAR(compute_error(a2, b2).error_c, 3.0 * ab, 1e-13);
}

TEST(ErrorMetrics, RejectsDifferentMeshes) {
    FieldHistory a(FieldLayout::monodomain(StructuredMesh::uniform(2, 2, 0, 1, 0, 1), TimeGrid(1.0, 1)));
    FieldHistory b(FieldLayout::monodomain(StructuredMesh::uniform(3, 2, 0, 1, 0, 1), TimeGrid(1.0, 1)));
    EXPECT_THROW(compute_error(a, b), std::invalid_argument);
}
