/**
 * @file mesh.hpp
 * @brief Tensor-product rectangular meshes and box decompositions.
 *
 * Cells are numbered row-major, k = j*nx + i. Vertical edges (unit normal +x)
 * come first, e = j*(nx+1) + i for the edge on x_i in row j. Horizontal edges
 * (unit normal +y) follow, e = nv + j*nx + i for the edge on y_j in column i.
 * Edge-based quantities (fluxes, velocities) are stored in this global
 * orientation unless stated otherwise.
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace stdd {

enum class Side : std::uint8_t { west = 0, east = 1, south = 2, north = 3 };

/// Local edge order of a cell is west, east, south, north. Outward normal of
/// each local edge relative to the global edge normal.
inline constexpr std::array<double, 4> kOutwardSign{-1.0, 1.0, -1.0, 1.0};

class StructuredMesh {
public:
    StructuredMesh() = default;
    /// Throws std::invalid_argument unless both coordinate lists are strictly
    /// increasing with at least two entries.
    StructuredMesh(std::vector<double> x, std::vector<double> y);

    static StructuredMesh uniform(int nx, int ny, double x0, double x1, double y0, double y1);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int num_cells() const { return nx_ * ny_; }
    int num_vertical_edges() const { return (nx_ + 1) * ny_; }
    int num_edges() const { return num_vertical_edges() + nx_ * (ny_ + 1); }

    const std::vector<double>& x_coords() const { return x_; }
    const std::vector<double>& y_coords() const { return y_; }

    int cell(int i, int j) const { return j * nx_ + i; }
    int cell_i(int k) const { return k % nx_; }
    int cell_j(int k) const { return k / nx_; }
    int vertical_edge(int i, int j) const { return j * (nx_ + 1) + i; }
    int horizontal_edge(int i, int j) const { return num_vertical_edges() + j * nx_ + i; }
    bool is_vertical(int e) const { return e < num_vertical_edges(); }

    double dx(int i) const { return x_[i + 1] - x_[i]; }
    double dy(int j) const { return y_[j + 1] - y_[j]; }
    double cell_area(int k) const { return dx(cell_i(k)) * dy(cell_j(k)); }
    double edge_length(int e) const;
    std::array<double, 2> cell_center(int k) const;
    std::array<double, 2> edge_midpoint(int e) const;

    /// Cells on the negative and positive side of e along its normal, -1 when
    /// that side is outside the mesh.
    std::array<int, 2> edge_cells(int e) const;
    std::array<int, 4> cell_edges(int k) const;

    bool is_boundary_edge(int e) const;
    /// Precondition: is_boundary_edge(e).
    Side boundary_side(int e) const;
    /// +1 or -1: outward normal of the domain on boundary edge e relative to
    /// the global edge normal.
    double boundary_outward(int e) const;

    /// Sum of the half-widths of the adjacent cells measured across e, times
    /// |E|; the trapezoidal weight of the edge in the RT0 L2 norm.
    double flux_weight(int e) const;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    int nx_ = 0;
    int ny_ = 0;
};

/// Coordinates of `cells` cells with widths first*growth^k laid out from
/// `anchor`; widths grow away from the anchor. With `toward_lower` the cells
/// extend to the left of the anchor.
std::vector<double> graded_segment(double anchor, double first, double growth, int cells,
                                   bool toward_lower);

/// Half-open cell-index box [i0,i1) x [j0,j1).
struct CellBox {
    int i0 = 0, i1 = 0, j0 = 0, j1 = 0;

    int nx() const { return i1 - i0; }
    int ny() const { return j1 - j0; }
    bool contains(int i, int j) const { return i >= i0 && i < i1 && j >= j0 && j < j1; }
    bool operator==(const CellBox&) const = default;
};

enum class EdgeRole : std::uint8_t { interior, outer, interface };

struct InterfaceEdge {
    int global_edge = -1;
    double length = 0.0;
    std::array<int, 2> local_edge{-1, -1};   ///< in subdomains a, b
    std::array<double, 2> outward{0.0, 0.0}; ///< n_a, n_b relative to global normal
    std::array<int, 2> slot{-1, -1};         ///< slot index in subdomains a, b
};

struct Interface {
    std::array<int, 2> subdomains{-1, -1}; ///< a < b
    std::vector<InterfaceEdge> edges;
};

/// One interface edge seen from a subdomain.
struct InterfaceSlot {
    int interface = -1;
    int position = -1; ///< index into Interface::edges
    int side = -1;     ///< 0 if this subdomain is side a, 1 if side b
    int local_edge = -1;
    double outward = 0.0;
};

struct Subdomain {
    CellBox box;
    StructuredMesh mesh;
    std::vector<int> cell_to_global;
    std::vector<int> edge_to_global;
    std::vector<EdgeRole> edge_role;
    std::vector<int> edge_slot; ///< slot index per local edge, -1 when not on an interface
    std::vector<InterfaceSlot> slots;
    std::vector<int> interfaces;
};

/// Non-overlapping decomposition of a mesh into axis-aligned cell boxes.
class Decomposition {
public:
    Decomposition() = default;
    /// Throws std::invalid_argument when the boxes overlap, leave cells
    /// uncovered, or leave the mesh.
    Decomposition(const StructuredMesh& mesh, std::vector<CellBox> boxes);

    const StructuredMesh& mesh() const { return mesh_; }
    const std::vector<Subdomain>& subdomains() const { return subdomains_; }
    const std::vector<Interface>& interfaces() const { return interfaces_; }
    int size() const { return static_cast<int>(subdomains_.size()); }
    int owner(int global_cell) const { return owner_[global_cell]; }

    /// Restriction of a global cell field to subdomain s.
    std::vector<double> restrict_cells(int s, std::span<const double> global) const;
    /// Restriction of a global edge field to subdomain s.
    std::vector<double> restrict_edges(int s, std::span<const double> global) const;

private:
    StructuredMesh mesh_;
    std::vector<Subdomain> subdomains_;
    std::vector<Interface> interfaces_;
    std::vector<int> owner_;
};

enum class FlowTag : std::uint8_t { neutral, inflow_a, inflow_b };

/// Per interface, per edge inflow tag: the side the fluid enters.
struct FlowClassification {
    std::vector<std::vector<FlowTag>> tags;

    bool inflow(int interface, int position, int side) const {
        const FlowTag t = tags[interface][position];
        return side == 0 ? t == FlowTag::inflow_a : t == FlowTag::inflow_b;
    }
    bool outflow(int interface, int position, int side) const { return inflow(interface, position, 1 - side); }
};

/// Tags every interface edge from the global normal velocity field.
FlowClassification classify_interface(const Decomposition& dd, std::span<const double> edge_velocity);

/// Tag of one global edge; throws std::invalid_argument when the edge is not on
/// any interface.
FlowTag classify_edge(const Decomposition& dd, int global_edge, std::span<const double> edge_velocity);

} // namespace stdd
