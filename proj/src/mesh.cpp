#include "stdd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace stdd {

namespace {

void check_increasing(const std::vector<double>& v, const char* name) {
    if (v.size() < 2)
        throw std::invalid_argument(std::string(name) + " coordinates need at least two entries");
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (!(v[k] > v[k - 1]) || !std::isfinite(v[k]))
            throw std::invalid_argument(std::string(name) + " coordinates must be strictly increasing");
    }
}

} // namespace

StructuredMesh::StructuredMesh(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    check_increasing(x_, "x");
    check_increasing(y_, "y");
    nx_ = static_cast<int>(x_.size()) - 1;
    ny_ = static_cast<int>(y_.size()) - 1;
}

StructuredMesh StructuredMesh::uniform(int nx, int ny, double x0, double x1, double y0, double y1) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("mesh needs at least one cell per direction");
    std::vector<double> x(nx + 1), y(ny + 1);
    for (int i = 0; i <= nx; ++i) x[i] = x0 + (x1 - x0) * i / nx;
    for (int j = 0; j <= ny; ++j) y[j] = y0 + (y1 - y0) * j / ny;
    x[nx] = x1;
    y[ny] = y1;
    return StructuredMesh(std::move(x), std::move(y));
}

double StructuredMesh::edge_length(int e) const {
    if (is_vertical(e)) return dy(e / (nx_ + 1));
    return dx((e - num_vertical_edges()) % nx_);
}

std::array<double, 2> StructuredMesh::cell_center(int k) const {
    const int i = cell_i(k), j = cell_j(k);
    return {0.5 * (x_[i] + x_[i + 1]), 0.5 * (y_[j] + y_[j + 1])};
}

std::array<double, 2> StructuredMesh::edge_midpoint(int e) const {
    if (is_vertical(e)) {
        const int j = e / (nx_ + 1), i = e % (nx_ + 1);
        return {x_[i], 0.5 * (y_[j] + y_[j + 1])};
    }
    const int h = e - num_vertical_edges();
    const int j = h / nx_, i = h % nx_;
    return {0.5 * (x_[i] + x_[i + 1]), y_[j]};
}

std::array<int, 2> StructuredMesh::edge_cells(int e) const {
    if (is_vertical(e)) {
        const int j = e / (nx_ + 1), i = e % (nx_ + 1);
        return {i > 0 ? cell(i - 1, j) : -1, i < nx_ ? cell(i, j) : -1};
    }
    const int h = e - num_vertical_edges();
    const int j = h / nx_, i = h % nx_;
    return {j > 0 ? cell(i, j - 1) : -1, j < ny_ ? cell(i, j) : -1};
}

std::array<int, 4> StructuredMesh::cell_edges(int k) const {
    const int i = cell_i(k), j = cell_j(k);
    return {vertical_edge(i, j), vertical_edge(i + 1, j), horizontal_edge(i, j), horizontal_edge(i, j + 1)};
}

bool StructuredMesh::is_boundary_edge(int e) const {
    const auto c = edge_cells(e);
    return c[0] < 0 || c[1] < 0;
}

Side StructuredMesh::boundary_side(int e) const {
    const auto c = edge_cells(e);
    if (is_vertical(e)) return c[0] < 0 ? Side::west : Side::east;
    return c[0] < 0 ? Side::south : Side::north;
}

double StructuredMesh::boundary_outward(int e) const {
    return edge_cells(e)[0] < 0 ? -1.0 : 1.0;
}

double StructuredMesh::flux_weight(int e) const {
    const auto c = edge_cells(e);
    double across = 0.0;
    for (int k : c) {
        if (k < 0) continue;
        across += 0.5 * (is_vertical(e) ? dx(cell_i(k)) : dy(cell_j(k)));
    }
    return across * edge_length(e);
}

std::vector<double> graded_segment(double anchor, double first, double growth, int cells, bool toward_lower) {
    if (cells < 1 || !(first > 0.0) || !(growth > 0.0))
        throw std::invalid_argument("graded segment needs positive width, growth and cell count");
    std::vector<double> out(cells + 1);
    out[0] = anchor;
    double w = first;
    for (int k = 1; k <= cells; ++k) {
        out[k] = out[k - 1] + (toward_lower ? -w : w);
        w *= growth;
    }
    if (toward_lower) std::reverse(out.begin(), out.end());
    return out;
}

Decomposition::Decomposition(const StructuredMesh& mesh, std::vector<CellBox> boxes) : mesh_(mesh) {
    if (boxes.empty()) throw std::invalid_argument("decomposition needs at least one subdomain");
    const int nx = mesh.nx(), ny = mesh.ny();
    owner_.assign(mesh.num_cells(), -1);
    for (std::size_t s = 0; s < boxes.size(); ++s) {
        const CellBox& b = boxes[s];
        if (b.i0 < 0 || b.j0 < 0 || b.i1 > nx || b.j1 > ny || b.i0 >= b.i1 || b.j0 >= b.j1)
            throw std::invalid_argument("subdomain box " + std::to_string(s) + " is empty or leaves the mesh");
        for (int j = b.j0; j < b.j1; ++j)
            for (int i = b.i0; i < b.i1; ++i) {
                int& o = owner_[mesh.cell(i, j)];
                if (o >= 0)
                    throw std::invalid_argument("subdomains " + std::to_string(o) + " and " + std::to_string(s) +
                                                " overlap");
                o = static_cast<int>(s);
            }
    }
    for (int k = 0; k < mesh.num_cells(); ++k)
        if (owner_[k] < 0) throw std::invalid_argument("cell " + std::to_string(k) + " is not covered");

    subdomains_.resize(boxes.size());
    std::vector<std::map<int, int>> global_to_local_edge(boxes.size());
    for (std::size_t s = 0; s < boxes.size(); ++s) {
        const CellBox& b = boxes[s];
        Subdomain& sd = subdomains_[s];
        sd.box = b;
        std::vector<double> x(mesh.x_coords().begin() + b.i0, mesh.x_coords().begin() + b.i1 + 1);
        std::vector<double> y(mesh.y_coords().begin() + b.j0, mesh.y_coords().begin() + b.j1 + 1);
        sd.mesh = StructuredMesh(std::move(x), std::move(y));
        const StructuredMesh& lm = sd.mesh;
        sd.cell_to_global.resize(lm.num_cells());
        for (int k = 0; k < lm.num_cells(); ++k)
            sd.cell_to_global[k] = mesh.cell(b.i0 + lm.cell_i(k), b.j0 + lm.cell_j(k));
        sd.edge_to_global.resize(lm.num_edges());
        sd.edge_role.assign(lm.num_edges(), EdgeRole::interior);
        sd.edge_slot.assign(lm.num_edges(), -1);
        for (int e = 0; e < lm.num_edges(); ++e) {
            int g;
            if (lm.is_vertical(e)) {
                const int j = e / (lm.nx() + 1), i = e % (lm.nx() + 1);
                g = mesh.vertical_edge(b.i0 + i, b.j0 + j);
            } else {
                const int h = e - lm.num_vertical_edges();
                g = mesh.horizontal_edge(b.i0 + h % lm.nx(), b.j0 + h / lm.nx());
            }
            sd.edge_to_global[e] = g;
            global_to_local_edge[s][g] = e;
            if (lm.is_boundary_edge(e))
                sd.edge_role[e] = mesh.is_boundary_edge(g) ? EdgeRole::outer : EdgeRole::interface;
        }
    }

    // Interfaces, one per neighbouring pair, edges in increasing global order.
    std::map<std::pair<int, int>, int> pair_index;
    for (int g = 0; g < mesh.num_edges(); ++g) {
        const auto c = mesh.edge_cells(g);
        if (c[0] < 0 || c[1] < 0) continue;
        const int s0 = owner_[c[0]], s1 = owner_[c[1]];
        if (s0 == s1) continue;
        const int a = std::min(s0, s1), bb = std::max(s0, s1);
        auto [it, fresh] = pair_index.try_emplace({a, bb}, static_cast<int>(interfaces_.size()));
        if (fresh) {
            Interface iface;
            iface.subdomains = {a, bb};
            interfaces_.push_back(iface);
        }
        InterfaceEdge ie;
        ie.global_edge = g;
        ie.length = mesh.edge_length(g);
        // The negative-side cell sees the global normal as outward.
        ie.outward[0] = (s0 == a) ? 1.0 : -1.0;
        ie.outward[1] = -ie.outward[0];
        ie.local_edge[0] = global_to_local_edge[a].at(g);
        ie.local_edge[1] = global_to_local_edge[bb].at(g);
        interfaces_[it->second].edges.push_back(ie);
    }

    for (int f = 0; f < static_cast<int>(interfaces_.size()); ++f) {
        Interface& iface = interfaces_[f];
        for (int side = 0; side < 2; ++side) {
            Subdomain& sd = subdomains_[iface.subdomains[side]];
            sd.interfaces.push_back(f);
            for (int p = 0; p < static_cast<int>(iface.edges.size()); ++p) {
                InterfaceEdge& ie = iface.edges[p];
                InterfaceSlot slot{f, p, side, ie.local_edge[side], ie.outward[side]};
                ie.slot[side] = static_cast<int>(sd.slots.size());
                sd.edge_slot[slot.local_edge] = ie.slot[side];
                sd.slots.push_back(slot);
            }
        }
    }
}

std::vector<double> Decomposition::restrict_cells(int s, std::span<const double> global) const {
    const Subdomain& sd = subdomains_.at(s);
    std::vector<double> out(sd.cell_to_global.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = global[sd.cell_to_global[k]];
    return out;
}

std::vector<double> Decomposition::restrict_edges(int s, std::span<const double> global) const {
    const Subdomain& sd = subdomains_.at(s);
    std::vector<double> out(sd.edge_to_global.size());
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = global[sd.edge_to_global[e]];
    return out;
}

namespace {

FlowTag tag_of(const InterfaceEdge& ie, double u) {
    const double ua = u * ie.outward[0];
    if (ua < 0.0) return FlowTag::inflow_a;
    if (ua > 0.0) return FlowTag::inflow_b;
    return FlowTag::neutral;
}

} // namespace

FlowClassification classify_interface(const Decomposition& dd, std::span<const double> edge_velocity) {
    if (static_cast<int>(edge_velocity.size()) != dd.mesh().num_edges())
        throw std::invalid_argument("velocity field size does not match the mesh");
    FlowClassification fc;
    fc.tags.resize(dd.interfaces().size());
    for (std::size_t f = 0; f < dd.interfaces().size(); ++f) {
        const auto& edges = dd.interfaces()[f].edges;
        fc.tags[f].resize(edges.size());
        for (std::size_t p = 0; p < edges.size(); ++p)
            fc.tags[f][p] = tag_of(edges[p], edge_velocity[edges[p].global_edge]);
    }
    return fc;
}

FlowTag classify_edge(const Decomposition& dd, int global_edge, std::span<const double> edge_velocity) {
    for (const Interface& iface : dd.interfaces())
        for (const InterfaceEdge& ie : iface.edges)
            if (ie.global_edge == global_edge) return tag_of(ie, edge_velocity[global_edge]);
    throw std::invalid_argument("edge " + std::to_string(global_edge) + " is not on an interface");
}

} // namespace stdd
