#include "stdd/mixed_fem.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <stdexcept>
#include <string>

namespace stdd {

struct DiffusionOperator::Factor {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
    int rows = 0;
};

DiffusionOperator::~DiffusionOperator() = default;
DiffusionOperator::DiffusionOperator(DiffusionOperator&&) noexcept = default;
DiffusionOperator& DiffusionOperator::operator=(DiffusionOperator&&) noexcept = default;

DiffusionOperator::DiffusionOperator(const StructuredMesh& mesh, std::span<const double> diffusion,
                                     std::span<const double> storage, std::vector<EdgeCondition> conditions,
                                     std::vector<double> robin_alpha)
    : mesh_(mesh),
      diffusion_(diffusion.begin(), diffusion.end()),
      storage_(storage.begin(), storage.end()),
      conditions_(std::move(conditions)),
      alpha_(std::move(robin_alpha)) {
    const int nc = mesh_.num_cells(), ne = mesh_.num_edges();
    if (static_cast<int>(diffusion_.size()) != nc || static_cast<int>(storage_.size()) != nc)
        throw std::invalid_argument("coefficient arrays do not match the mesh");
    if (static_cast<int>(conditions_.size()) != ne) throw std::invalid_argument("edge conditions do not match the mesh");
    bool has_robin = false, anchored = false, transient = false;
    for (int e = 0; e < ne; ++e) {
        const bool boundary = mesh_.is_boundary_edge(e);
        const EdgeCondition bc = conditions_[e];
        if (boundary == (bc == EdgeCondition::interior))
            throw std::invalid_argument("edge " + std::to_string(e) + " has a condition inconsistent with its position");
        if (bc == EdgeCondition::robin) has_robin = true;
        if (bc == EdgeCondition::dirichlet || bc == EdgeCondition::robin) anchored = true;
    }
    if (has_robin) {
        if (static_cast<int>(alpha_.size()) != ne) throw std::invalid_argument("robin coefficients do not match the mesh");
        for (int e = 0; e < ne; ++e)
            if (conditions_[e] == EdgeCondition::robin && !(alpha_[e] > 0.0))
                throw std::invalid_argument("robin coefficient must be positive on edge " + std::to_string(e));
    }
    cells_.resize(nc);
    for (int k = 0; k < nc; ++k) {
        const double d = diffusion_[k];
        if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("diffusion must be positive in every cell");
        if (!(storage_[k] >= 0.0)) throw std::invalid_argument("storage must be non-negative");
        if (storage_[k] > 0.0) transient = true;
        const double hx = mesh_.dx(mesh_.cell_i(k)), hy = mesh_.dy(mesh_.cell_j(k));
        Cell& c = cells_[k];
        c.gx = 2.0 * d * hy / hx;
        c.gy = 2.0 * d * hx / hy;
        c.s = 1.0 / (storage_[k] + 6.0 * c.gx + 6.0 * c.gy);
    }
    if (!anchored && !transient)
        throw std::runtime_error("stationary problem without Dirichlet or Robin edges is singular");

    unknown_.assign(ne, -1);
    int rows = 0;
    for (int e = 0; e < ne; ++e)
        if (conditions_[e] != EdgeCondition::dirichlet) unknown_[e] = rows++;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(nc) * 16 + ne);
    for (int k = 0; k < nc; ++k) {
        const Cell& c = cells_[k];
        const auto edges = mesh_.cell_edges(k);
        const double w[4] = {3 * c.gx, 3 * c.gx, 3 * c.gy, 3 * c.gy};
        for (int a = 0; a < 4; ++a) {
            const int ra = unknown_[edges[a]];
            if (ra < 0) continue;
            for (int b = 0; b < 4; ++b) {
                const int rb = unknown_[edges[b]];
                if (rb < 0 || rb > ra) continue;
                double g = 0.0;
                if (a / 2 == b / 2) g = (a == b ? 2.0 : 1.0) * (a < 2 ? c.gx : c.gy);
                trip.emplace_back(ra, rb, g - c.s * w[a] * w[b]);
            }
        }
    }
    for (int e = 0; e < ne; ++e)
        if (conditions_[e] == EdgeCondition::robin)
            trip.emplace_back(unknown_[e], unknown_[e], alpha_[e] * mesh_.edge_length(e));

    factor_ = std::make_unique<Factor>();
    factor_->rows = rows;
    if (rows > 0) {
        Eigen::SparseMatrix<double> m(rows, rows);
        m.setFromTriplets(trip.begin(), trip.end());
        factor_->llt.compute(m);
        if (factor_->llt.info() != Eigen::Success) throw std::runtime_error("trace system is not positive definite");
    }
}

void DiffusionOperator::solve(std::span<const double> cell_rhs, std::span<const double> edge_data,
                              DiffusionStep& out) const {
    const int nc = mesh_.num_cells(), ne = mesh_.num_edges();
    if (static_cast<int>(cell_rhs.size()) != nc || static_cast<int>(edge_data.size()) != ne)
        throw std::invalid_argument("right-hand side does not match the mesh");
    out.c.resize(nc);
    out.flux.assign(ne, 0.0);
    out.trace.resize(ne);

    Eigen::VectorXd b = Eigen::VectorXd::Zero(factor_->rows);
    for (int k = 0; k < nc; ++k) {
        const Cell& c = cells_[k];
        const auto edges = mesh_.cell_edges(k);
        const double w[4] = {3 * c.gx, 3 * c.gx, 3 * c.gy, 3 * c.gy};
        for (int a = 0; a < 4; ++a) {
            const int ra = unknown_[edges[a]];
            if (ra < 0) continue;
            double v = c.s * w[a] * cell_rhs[k];
            for (int bb = 0; bb < 4; ++bb) {
                if (unknown_[edges[bb]] >= 0) continue;
                double g = 0.0;
                if (a / 2 == bb / 2) g = (a == bb ? 2.0 : 1.0) * (a < 2 ? c.gx : c.gy);
                v -= (g - c.s * w[a] * w[bb]) * edge_data[edges[bb]];
            }
            b[ra] += v;
        }
    }
    for (int e = 0; e < ne; ++e) {
        if (conditions_[e] == EdgeCondition::robin) b[unknown_[e]] += mesh_.edge_length(e) * edge_data[e];
        else if (conditions_[e] == EdgeCondition::neumann) b[unknown_[e]] -= mesh_.edge_length(e) * edge_data[e];
    }
    Eigen::VectorXd x;
    if (factor_->rows > 0) x = factor_->llt.solve(b);
    for (int e = 0; e < ne; ++e) out.trace[e] = unknown_[e] >= 0 ? x[unknown_[e]] : edge_data[e];

    // Each interior edge receives the flux of both neighbours; report the mean.
    for (int k = 0; k < nc; ++k) {
        const Cell& c = cells_[k];
        const auto edges = mesh_.cell_edges(k);
        const double w[4] = {3 * c.gx, 3 * c.gx, 3 * c.gy, 3 * c.gy};
        double lam[4];
        double acc = cell_rhs[k];
        for (int a = 0; a < 4; ++a) {
            lam[a] = out.trace[edges[a]];
            acc += w[a] * lam[a];
        }
        const double ck = c.s * acc;
        out.c[k] = ck;
        const double hx = mesh_.dx(mesh_.cell_i(k)), hy = mesh_.dy(mesh_.cell_j(k));
        const double q[4] = {(w[0] * ck - c.gx * (2 * lam[0] + lam[1])) / hy,
                             (w[1] * ck - c.gx * (lam[0] + 2 * lam[1])) / hy,
                             (w[2] * ck - c.gy * (2 * lam[2] + lam[3])) / hx,
                             (w[3] * ck - c.gy * (lam[2] + 2 * lam[3])) / hx};
        for (int a = 0; a < 4; ++a) {
            const int e = edges[a];
            const double share = mesh_.is_boundary_edge(e) ? 1.0 : 0.5;
            out.flux[e] += share * kOutwardSign[a] * q[a];
        }
    }
    for (int e = 0; e < ne; ++e)
        if (conditions_[e] == EdgeCondition::neumann) out.flux[e] = mesh_.boundary_outward(e) * edge_data[e];
}

void DiffusionOperator::step(std::span<const double> c_old, std::span<const double> source,
                             std::span<const double> edge_data, DiffusionStep& out) const {
    const int nc = mesh_.num_cells();
    std::vector<double> rhs(nc);
    for (int k = 0; k < nc; ++k) {
        double v = storage_[k] * c_old[k];
        if (!source.empty()) v += mesh_.cell_area(k) * source[k];
        rhs[k] = v;
    }
    solve(rhs, edge_data, out);
}

double variational_trace(const StructuredMesh& mesh, int k, double diffusion, double c,
                         const std::array<double, 4>& outward_flux, int local_edge) {
    // Tested against the RT0 basis function with unit outward flux on the
    // edge: lambda = c - (A q)_E, exact rectangle mass matrix of 1/d.
    const double hx = mesh.dx(mesh.cell_i(k)), hy = mesh.dy(mesh.cell_j(k));
    const int a = local_edge;
    const int pair = a < 2 ? 0 : 2;
    const double h_par = a < 2 ? hx : hy; // length across the cell
    const double len = a < 2 ? hy : hx;   // edge length
    const double diag = h_par / (3.0 * diffusion * len);
    const double off = h_par / (6.0 * diffusion * len);
    const double qa = outward_flux[a] * len;
    const double qb = outward_flux[pair + (1 - (a - pair))] * len;
    return c - (diag * qa - off * qb);
}

DarcyField solve_darcy(const StructuredMesh& mesh, std::span<const double> conductivity,
                       const std::array<std::optional<double>, 4>& side_head) {
    bool any = false;
    for (const auto& h : side_head) any = any || h.has_value();
    if (!any) throw std::invalid_argument("Darcy problem needs a prescribed head on at least one side");
    const int ne = mesh.num_edges();
    std::vector<EdgeCondition> bc(ne, EdgeCondition::interior);
    std::vector<double> data(ne, 0.0);
    for (int e = 0; e < ne; ++e) {
        if (!mesh.is_boundary_edge(e)) continue;
        const auto& h = side_head[static_cast<int>(mesh.boundary_side(e))];
        if (h) {
            bc[e] = EdgeCondition::dirichlet;
            data[e] = *h;
        } else {
            bc[e] = EdgeCondition::neumann;
        }
    }
    // Velocities only see head differences. Solving around the mean prescribed
    // head keeps the values small where high conductivity flattens the head.
    double shift = 0.0;
    int count = 0;
    for (const auto& h : side_head)
        if (h) shift += *h, ++count;
    shift /= count;
    for (int e = 0; e < ne; ++e)
        if (bc[e] == EdgeCondition::dirichlet) data[e] -= shift;
    std::vector<double> zero(mesh.num_cells(), 0.0);
    DiffusionOperator op(mesh, conductivity, zero, std::move(bc));
    DiffusionStep st;
    op.solve(zero, data, st);
    for (double& h : st.c) h += shift;
    return DarcyField{std::move(st.c), std::move(st.flux)};
}

} // namespace stdd
