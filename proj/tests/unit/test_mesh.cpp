#include "stdd/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

using namespace stdd;

TEST(Mesh, NumberingAndAdjacency) {
    const auto m = StructuredMesh::uniform(3, 2, 0.0, 3.0, 0.0, 1.0);
    EXPECT_EQ(m.num_cells(), 6);
    EXPECT_EQ(m.num_vertical_edges(), 8);
    EXPECT_EQ(m.num_edges(), 8 + 9);
    const int k = m.cell(1, 1);
    EXPECT_EQ(k, 4);
    const auto e = m.cell_edges(k);
    EXPECT_EQ(e[0], m.vertical_edge(1, 1));
    EXPECT_EQ(e[1], m.vertical_edge(2, 1));
    EXPECT_EQ(e[2], m.horizontal_edge(1, 1));
    EXPECT_EQ(e[3], m.horizontal_edge(1, 2));
    // edge normals point in +x / +y: first adjacent cell is on the negative side
    EXPECT_EQ(m.edge_cells(e[0])[0], m.cell(0, 1));
    EXPECT_EQ(m.edge_cells(e[0])[1], k);
    EXPECT_EQ(m.edge_cells(e[3])[0], k);
    EXPECT_EQ(m.edge_cells(e[3])[1], -1);
    EXPECT_TRUE(m.is_boundary_edge(e[3]));
    EXPECT_EQ(m.boundary_side(e[3]), Side::north);
    EXPECT_DOUBLE_EQ(m.boundary_outward(e[3]), 1.0);
    EXPECT_DOUBLE_EQ(m.boundary_outward(m.vertical_edge(0, 0)), -1.0);
    EXPECT_EQ(m.boundary_side(m.vertical_edge(0, 0)), Side::west);
}

TEST(Mesh, EveryInteriorEdgeHasTwoCells) {
    const auto m = StructuredMesh::uniform(4, 3, 0.0, 1.0, 0.0, 1.0);
    std::vector<int> count(m.num_edges(), 0);
    for (int k = 0; k < m.num_cells(); ++k)
        for (int e : m.cell_edges(k)) ++count[e];
    for (int e = 0; e < m.num_edges(); ++e) EXPECT_EQ(count[e], m.is_boundary_edge(e) ? 1 : 2) << e;
}

TEST(Mesh, FluxWeightUsesAdjacentHalfWidths) {
    const StructuredMesh m({0.0, 1.0, 3.0}, {0.0, 0.5});
    const int e = m.vertical_edge(1, 0); // between widths 1 and 2, length 0.5
    EXPECT_DOUBLE_EQ(m.flux_weight(e), 0.5 * (0.5 + 1.0));
    EXPECT_DOUBLE_EQ(m.flux_weight(m.vertical_edge(0, 0)), 0.5 * 0.5);
    EXPECT_DOUBLE_EQ(m.flux_weight(m.horizontal_edge(1, 0)), 2.0 * 0.25);
    // sum of weights of the vertical edges equals the domain area (one strip per direction)
    double vsum = 0.0;
    for (int e2 = 0; e2 < m.num_vertical_edges(); ++e2) vsum += m.flux_weight(e2);
    EXPECT_DOUBLE_EQ(vsum, 3.0 * 0.5);
}

TEST(Mesh, GradedSegment) {
    const auto fwd = graded_segment(1.0, 0.1, 1.05, 10, false);
    ASSERT_EQ(fwd.size(), 11u);
    EXPECT_NEAR(fwd[1] - fwd[0], 0.1, 1e-15);
    EXPECT_NEAR(fwd[10] - fwd[9], 0.1 * std::pow(1.05, 9), 1e-14);
    EXPECT_NEAR(fwd.back() - 1.0, 0.1 * (std::pow(1.05, 10) - 1.0) / 0.05, 1e-12);
    const auto back = graded_segment(0.0, 0.1, 1.05, 10, true);
    EXPECT_DOUBLE_EQ(back.back(), 0.0);
    EXPECT_NEAR(back[10] - back[9], 0.1, 1e-15);
    EXPECT_THROW(graded_segment(0.0, 0.0, 1.0, 3, false), std::invalid_argument);
}

TEST(Mesh, RejectsNonIncreasingCoordinates) {
    EXPECT_THROW(StructuredMesh({0.0, 1.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
}

TEST(Decomposition, TwoByOneInterface) {
    const auto m = StructuredMesh::uniform(4, 3, 0.0, 1.0, 0.0, 1.0);
    const Decomposition dd(m, {CellBox{0, 2, 0, 3}, CellBox{2, 4, 0, 3}});
    ASSERT_EQ(dd.interfaces().size(), 1u);
    const Interface& f = dd.interfaces()[0];
    EXPECT_EQ(f.subdomains[0], 0);
    EXPECT_EQ(f.subdomains[1], 1);
    ASSERT_EQ(f.edges.size(), 3u);
    for (std::size_t p = 0; p < f.edges.size(); ++p) {
        const InterfaceEdge& ie = f.edges[p];
        EXPECT_EQ(ie.global_edge, m.vertical_edge(2, static_cast<int>(p)));
        EXPECT_DOUBLE_EQ(ie.outward[0], 1.0);
        EXPECT_DOUBLE_EQ(ie.outward[1], -1.0);
        for (int side = 0; side < 2; ++side) {
            const Subdomain& sd = dd.subdomains()[f.subdomains[side]];
            EXPECT_EQ(sd.edge_to_global[ie.local_edge[side]], ie.global_edge);
            EXPECT_EQ(sd.edge_role[ie.local_edge[side]], EdgeRole::interface);
            const InterfaceSlot& sl = sd.slots[ie.slot[side]];
            EXPECT_EQ(sl.position, static_cast<int>(p));
            EXPECT_EQ(sl.side, side);
            EXPECT_EQ(ie.slot[side], f.edges[0].slot[side] + static_cast<int>(p));
        }
    }
    EXPECT_EQ(dd.owner(m.cell(3, 1)), 1);
    const std::vector<double> g{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    const auto r = dd.restrict_cells(1, g);
    EXPECT_EQ(r, (std::vector<double>{2, 3, 6, 7, 10, 11}));
}

TEST(Decomposition, NineBoxesHaveTwelveInterfaces) {
    const auto m = StructuredMesh::uniform(6, 6, 0.0, 1.0, 0.0, 1.0);
    std::vector<CellBox> boxes;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) boxes.push_back({2 * i, 2 * i + 2, 2 * j, 2 * j + 2});
    const Decomposition dd(m, boxes);
    EXPECT_EQ(dd.interfaces().size(), 12u);
    EXPECT_EQ(dd.subdomains()[4].interfaces.size(), 4u);
    EXPECT_EQ(dd.subdomains()[4].slots.size(), 8u);
}

TEST(Decomposition, RejectsOverlapAndGaps) {
    const auto m = StructuredMesh::uniform(4, 2, 0.0, 1.0, 0.0, 1.0);
    EXPECT_THROW(Decomposition(m, {CellBox{0, 3, 0, 2}, CellBox{2, 4, 0, 2}}), std::invalid_argument);
    EXPECT_THROW(Decomposition(m, {CellBox{0, 2, 0, 2}}), std::invalid_argument);
    EXPECT_THROW(Decomposition(m, {CellBox{0, 5, 0, 2}}), std::invalid_argument);
}

TEST(Decomposition, FlowClassification) {
    const auto m = StructuredMesh::uniform(2, 2, 0.0, 1.0, 0.0, 1.0);
    const Decomposition dd(m, {CellBox{0, 1, 0, 2}, CellBox{1, 2, 0, 2}});
    std::vector<double> u(m.num_edges(), 0.0);
    u[m.vertical_edge(1, 0)] = 1.0;  // flows from a into b
    u[m.vertical_edge(1, 1)] = -1.0; // flows from b into a
    const auto fc = classify_interface(dd, u);
    EXPECT_EQ(fc.tags[0][0], FlowTag::inflow_b);
    EXPECT_EQ(fc.tags[0][1], FlowTag::inflow_a);
    EXPECT_TRUE(fc.inflow(0, 0, 1));
    EXPECT_TRUE(fc.outflow(0, 0, 0));
    u[m.vertical_edge(1, 1)] = 0.0;
    EXPECT_EQ(classify_edge(dd, m.vertical_edge(1, 1), u), FlowTag::neutral);
    EXPECT_THROW(classify_edge(dd, m.vertical_edge(0, 0), u), std::invalid_argument);
}
