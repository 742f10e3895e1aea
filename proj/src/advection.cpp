#include "stdd/advection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace stdd {

void upwind(const StructuredMesh& mesh, std::span<const double> edge_velocity, std::span<const double> c,
            std::span<const double> boundary_values, std::span<double> out) {
    const int ne = mesh.num_edges();
    for (int e = 0; e < ne; ++e) {
        const double u = edge_velocity[e];
        const auto cells = mesh.edge_cells(e);
        if (u == 0.0) {
            out[e] = 0.0;
        } else if (cells[0] >= 0 && cells[1] >= 0) {
            out[e] = u > 0.0 ? c[cells[0]] : c[cells[1]];
        } else {
            const double u_out = u * (cells[0] < 0 ? -1.0 : 1.0);
            const int inside = cells[0] >= 0 ? cells[0] : cells[1];
            if (u_out > 0.0) {
                out[e] = c[inside];
            } else {
                const double v = boundary_values[e];
                if (std::isnan(v)) throw std::invalid_argument("missing inflow value on boundary edge " + std::to_string(e));
                out[e] = v;
            }
        }
    }
}

std::vector<double> upwind(const StructuredMesh& mesh, std::span<const double> edge_velocity,
                           std::span<const double> c, std::span<const double> boundary_values) {
    std::vector<double> out(mesh.num_edges());
    upwind(mesh, edge_velocity, c, boundary_values, out);
    return out;
}

void advection_substep(const StructuredMesh& mesh, std::span<const double> edge_velocity,
                       std::span<const double> porosity, double tau_a, std::span<const double> c,
                       std::span<const double> chat, std::span<double> c_out) {
    const int nc = mesh.num_cells();
    for (int k = 0; k < nc; ++k) {
        const auto edges = mesh.cell_edges(k);
        const int i = mesh.cell_i(k), j = mesh.cell_j(k);
        const double hx = mesh.dx(i), hy = mesh.dy(j);
        const double out_flux = hy * (chat[edges[1]] * edge_velocity[edges[1]] - chat[edges[0]] * edge_velocity[edges[0]]) +
                                hx * (chat[edges[3]] * edge_velocity[edges[3]] - chat[edges[2]] * edge_velocity[edges[2]]);
        c_out[k] = c[k] - tau_a / (porosity[k] * hx * hy) * out_flux;
    }
}

double cfl_step(const StructuredMesh& mesh, std::span<const double> edge_velocity, std::span<const double> porosity) {
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < mesh.num_cells(); ++k) {
        double umax = 0.0;
        for (int e : mesh.cell_edges(k)) umax = std::max(umax, std::abs(edge_velocity[e]));
        if (umax == 0.0) continue;
        const double h = std::min(mesh.dx(mesh.cell_i(k)), mesh.dy(mesh.cell_j(k)));
        best = std::min(best, porosity[k] * h / umax);
    }
    return best;
}

std::optional<std::string> cfl_diagnostic(const StructuredMesh& mesh, std::span<const double> edge_velocity,
                                          std::span<const double> porosity, double tau_a) {
    const double bound = cfl_step(mesh, edge_velocity, porosity);
    if (tau_a <= bound * (1.0 + 1e-12)) return std::nullopt;
    std::ostringstream os;
    os << "advection step " << tau_a << " exceeds the stability bound " << bound;
    return os.str();
}

int substeps_for(double tau, double cfl) {
    if (!std::isfinite(cfl)) return 1;
    const double r = tau / cfl;
    int l = static_cast<int>(std::ceil(r * (1.0 - 1e-12)));
    return std::max(1, l);
}

std::vector<double> edge_velocity_from_cells(const StructuredMesh& mesh, std::span<const double> ux,
                                             std::span<const double> uy) {
    std::vector<double> u(mesh.num_edges(), 0.0);
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const auto cells = mesh.edge_cells(e);
        const auto& comp = mesh.is_vertical(e) ? ux : uy;
        double sum = 0.0;
        int n = 0;
        for (int k : cells)
            if (k >= 0) {
                sum += comp[k];
                ++n;
            }
        u[e] = sum / n;
    }
    return u;
}

} // namespace stdd
