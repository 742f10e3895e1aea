#include "stdd/subdomain_solver.hpp"

#include "stdd/advection.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace stdd {

InterfaceTrace InterfaceTrace::zeros(const TimeGrid& grid, int width) {
    InterfaceTrace t;
    t.grid = grid;
    t.width = width;
    t.values.assign(static_cast<std::size_t>(grid.slabs()) * width, 0.0);
    return t;
}

SubdomainModel make_subdomain_model(const Decomposition& dd, int s, std::span<const double> diffusion,
                                    std::span<const double> porosity, std::span<const double> edge_velocity,
                                    const std::array<EdgeCondition, 4>& outer_bc, const TimeGrid& grid) {
    const Subdomain& sd = dd.subdomains().at(s);
    SubdomainModel m;
    m.mesh = sd.mesh;
    m.diffusion = dd.restrict_cells(s, diffusion);
    m.porosity = dd.restrict_cells(s, porosity);
    m.velocity = dd.restrict_edges(s, edge_velocity);
    m.outer.assign(sd.mesh.num_edges(), EdgeCondition::interior);
    for (int e = 0; e < sd.mesh.num_edges(); ++e) {
        if (sd.edge_role[e] != EdgeRole::outer) continue;
        m.outer[e] = outer_bc[static_cast<int>(dd.mesh().boundary_side(sd.edge_to_global[e]))];
    }
    m.slots = sd.slots;
    m.grid = grid;
    return m;
}

struct SubdomainSolver::Cache {
    std::mutex mutex;
    std::shared_ptr<const DiffusionOperator> dirichlet;
    std::shared_ptr<const DiffusionOperator> neumann;
    std::vector<std::pair<std::vector<double>, std::shared_ptr<const DiffusionOperator>>> robin; // most recent last
    std::atomic<long> solves{0};
};

SubdomainSolver::SubdomainSolver(SubdomainSolver&&) noexcept = default;
SubdomainSolver::~SubdomainSolver() = default;

SubdomainSolver::SubdomainSolver(SubdomainModel model) : model_(std::move(model)), cache_(std::make_unique<Cache>()) {
    const StructuredMesh& mesh = model_.mesh;
    const int nc = mesh.num_cells(), ne = mesh.num_edges();
    if (static_cast<int>(model_.diffusion.size()) != nc || static_cast<int>(model_.porosity.size()) != nc ||
        static_cast<int>(model_.velocity.size()) != ne || static_cast<int>(model_.outer.size()) != ne)
        throw std::invalid_argument("subdomain model arrays do not match its mesh");
    for (double p : model_.porosity)
        if (!(p > 0.0)) throw std::invalid_argument("porosity must be positive");
    std::vector<char> is_slot(ne, 0);
    for (const InterfaceSlot& s : model_.slots) {
        if (s.local_edge < 0 || s.local_edge >= ne || !mesh.is_boundary_edge(s.local_edge))
            throw std::invalid_argument("interface slot is not a boundary edge of the subdomain");
        is_slot[s.local_edge] = 1;
    }
    for (int e = 0; e < ne; ++e) {
        if (!mesh.is_boundary_edge(e) || is_slot[e]) continue;
        if (model_.outer[e] != EdgeCondition::dirichlet && model_.outer[e] != EdgeCondition::neumann)
            throw std::invalid_argument("outer boundary edges must be Dirichlet or Neumann");
    }
    storage_.resize(nc);
    const double tau = model_.grid.step();
    for (int k = 0; k < nc; ++k) storage_[k] = model_.porosity[k] * mesh.cell_area(k) / tau;
    for (double u : model_.velocity) has_advection_ = has_advection_ || u != 0.0;
    if (has_advection_) {
        if (auto msg = cfl_diagnostic(mesh, model_.velocity, model_.porosity, model_.grid.window() /
                                                                          model_.grid.advection_slabs()))
            std::cerr << "warning: " << *msg << '\n';
    }
}

long SubdomainSolver::solves() const { return cache_->solves.load(); }

std::shared_ptr<const DiffusionOperator> SubdomainSolver::diffusion_operator(Kind kind,
                                                                             std::span<const double> alpha) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto build = [&](EdgeCondition on_slots, std::vector<double> edge_alpha) {
        std::vector<EdgeCondition> bc = model_.outer;
        for (const InterfaceSlot& s : model_.slots) bc[s.local_edge] = on_slots;
        return std::make_shared<const DiffusionOperator>(model_.mesh, model_.diffusion, storage_, std::move(bc),
                                                         std::move(edge_alpha));
    };
    if (kind == Kind::dirichlet) {
        if (!cache_->dirichlet) cache_->dirichlet = build(EdgeCondition::dirichlet, {});
        return cache_->dirichlet;
    }
    if (kind == Kind::neumann) {
        if (!cache_->neumann) cache_->neumann = build(EdgeCondition::neumann, {});
        return cache_->neumann;
    }
    if (static_cast<int>(alpha.size()) != num_slots()) throw std::invalid_argument("one Robin coefficient per slot expected");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument("Robin coefficient must be positive");
    std::vector<double> key(alpha.begin(), alpha.end());
    auto& lru = cache_->robin;
    for (std::size_t i = 0; i < lru.size(); ++i) {
        if (lru[i].first == key) {
            auto hit = lru[i];
            lru.erase(lru.begin() + static_cast<long>(i));
            lru.push_back(hit);
            return hit.second;
        }
    }
    std::vector<double> edge_alpha(model_.mesh.num_edges(), 0.0);
    for (int s = 0; s < num_slots(); ++s) edge_alpha[model_.slots[s].local_edge] = alpha[s];
    auto op = build(EdgeCondition::robin, std::move(edge_alpha));
    lru.emplace_back(std::move(key), op);
    if (lru.size() > 4) lru.erase(lru.begin());
    return op;
}

SubdomainState SubdomainSolver::run(Kind kind, const DiffusionOperator& op, const InterfaceTrace& lambda_a,
                                    const InterfaceTrace& data_trace, const SolveData& data,
                                    const SolveOptions& opts) const {
    const StructuredMesh& mesh = model_.mesh;
    const TimeGrid& grid = model_.grid;
    const TimeGrid agrid = grid.advection_grid();
    const int nc = mesh.num_cells(), ne = mesh.num_edges(), ns = num_slots();
    const int n_steps = grid.slabs(), l_steps = grid.substeps();
    if (!(lambda_a.grid == agrid) || lambda_a.width != ns || lambda_a.values.size() != agrid.slabs() * std::size_t(ns))
        throw std::invalid_argument("advection trace does not match the subdomain advection grid");
    if (!(data_trace.grid == grid) || data_trace.width != ns || data_trace.values.size() != grid.slabs() * std::size_t(ns))
        throw std::invalid_argument("interface trace does not match the subdomain diffusion grid");
    if (!data.c0.empty() && static_cast<int>(data.c0.size()) != nc)
        throw std::invalid_argument("initial condition does not match the subdomain mesh");
    cache_->solves.fetch_add(1);

    SubdomainState st;
    st.upwind = InterfaceTrace::zeros(agrid, ns);
    st.flux = InterfaceTrace::zeros(grid, ns);
    st.trace = InterfaceTrace::zeros(grid, ns);
    std::vector<double> c(nc, 0.0);
    if (!data.c0.empty()) c.assign(data.c0.begin(), data.c0.end());

    std::vector<double> f;
    std::vector<std::array<double, 2>> centres;
    const bool has_source = data.source != nullptr && static_cast<bool>(data.source->f);
    if (has_source) {
        f.resize(nc);
        centres.resize(nc);
        for (int k = 0; k < nc; ++k) centres[k] = mesh.cell_center(k);
        if (data.source->steady)
            for (int k = 0; k < nc; ++k) f[k] = data.source->f(centres[k][0], centres[k][1], data.t0);
    }

    std::vector<double> boundary(ne, 0.0), chat(ne, 0.0), edge_data(ne, 0.0);
    const double tau_a = agrid.step();
    DiffusionStep step;
    if (opts.keep_fields) {
        st.c.reserve(n_steps);
        st.r.reserve(n_steps);
    }
    for (int n = 0; n < n_steps; ++n) {
        if (has_advection_) {
            for (int l = 0; l < l_steps; ++l) {
                const int a = n * l_steps + l;
                const double* la = lambda_a.slab(a);
                for (int s = 0; s < ns; ++s) boundary[model_.slots[s].local_edge] = la[s];
                upwind(mesh, model_.velocity, c, boundary, chat);
                double* out = st.upwind.slab(a);
                for (int s = 0; s < ns; ++s) out[s] = chat[model_.slots[s].local_edge];
                advection_substep(mesh, model_.velocity, model_.porosity, tau_a, c, chat, c);
            }
        }
        if (has_source && !data.source->steady) {
            const double t = data.t0 + grid.slab_start(n + 1);
            for (int k = 0; k < nc; ++k) f[k] = data.source->f(centres[k][0], centres[k][1], t);
        }
        const double* d = data_trace.slab(n);
        for (int s = 0; s < ns; ++s) edge_data[model_.slots[s].local_edge] = d[s];
        op.step(c, has_source ? std::span<const double>(f) : std::span<const double>(), edge_data, step);
        double* fo = st.flux.slab(n);
        double* to = st.trace.slab(n);
        for (int s = 0; s < ns; ++s) {
            const InterfaceSlot& sl = model_.slots[s];
            fo[s] = kind == Kind::neumann ? d[s] : step.flux[sl.local_edge] * sl.outward;
            to[s] = step.trace[sl.local_edge];
        }
        c = step.c;
        if (opts.observer) opts.observer(n + 1, step);
        if (opts.keep_fields) {
            st.c.push_back(step.c);
            st.r.push_back(step.flux);
        }
    }
    st.final_c = std::move(c);
    return st;
}

SubdomainState SubdomainSolver::solve_dirichlet(const InterfaceTrace& lambda_a, const InterfaceTrace& lambda,
                                                const SolveData& data, const SolveOptions& opts) const {
    auto op = diffusion_operator(Kind::dirichlet, {});
    return run(Kind::dirichlet, *op, lambda_a, lambda, data, opts);
}

SubdomainState SubdomainSolver::solve_robin(const InterfaceTrace& lambda_a, const InterfaceTrace& xi,
                                            std::span<const double> alpha, const SolveData& data,
                                            const SolveOptions& opts) const {
    auto op = diffusion_operator(Kind::robin, alpha);
    return run(Kind::robin, *op, lambda_a, xi, data, opts);
}

SubdomainState SubdomainSolver::solve_neumann(const InterfaceTrace& lambda_a, const InterfaceTrace& flux,
                                              const SolveOptions& opts) const {
    auto op = diffusion_operator(Kind::neumann, {});
    return run(Kind::neumann, *op, lambda_a, flux, SolveData{}, opts);
}

InterfaceTrace extract_H(const SubdomainModel& model, const SubdomainState& state) {
    InterfaceTrace h = state.upwind;
    const int ns = h.width;
    for (int s = 0; s < ns; ++s) {
        const InterfaceSlot& sl = model.slots[s];
        if (model.velocity[sl.local_edge] * sl.outward > 0.0) continue;
        for (int a = 0; a < h.grid.slabs(); ++a) h.slab(a)[s] = 0.0;
    }
    return h;
}

const InterfaceTrace& extract_F(const SubdomainState& state) { return state.flux; }

const InterfaceTrace& extract_Tr(const SubdomainState& state) { return state.trace; }

InterfaceTrace extract_B(const SubdomainState& state, const InterfaceTrace& xi, std::span<const double> alpha_ij,
                         std::span<const double> alpha_ji) {
    InterfaceTrace b = state.flux;
    for (int n = 0; n < b.grid.slabs(); ++n) {
        double* out = b.slab(n);
        const double* x = xi.slab(n);
        for (int s = 0; s < b.width; ++s) out[s] = out[s] + alpha_ji[s] / alpha_ij[s] * (x[s] + out[s]);
    }
    return b;
}

} // namespace stdd
