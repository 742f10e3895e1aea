#include "stdd/interface_solver.hpp"

#include "stdd/robin_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stdd {

std::string to_string(Method m) {
    switch (m) {
    case Method::schur: return "schur";
    case Method::schur_nn: return "schur-nn";
    case Method::oswr_jacobi: return "oswr-jacobi";
    case Method::oswr_gmres: return "oswr-gmres";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "schur") return Method::schur;
    if (name == "schur-nn") return Method::schur_nn;
    if (name == "oswr-jacobi") return Method::oswr_jacobi;
    if (name == "oswr-gmres") return Method::oswr_gmres;
    throw std::invalid_argument("unknown method '" + name + "'");
}

bool is_schwarz(Method m) { return m == Method::oswr_jacobi || m == Method::oswr_gmres; }

int solves_per_iteration(Method m) { return m == Method::schur_nn ? 2 : 1; }

namespace {

int side_of(const Interface& iface, int s) { return iface.subdomains[0] == s ? 0 : 1; }

} // namespace

Multidomain::Multidomain(MultidomainProblem problem, const MethodConfig& config) : problem_(std::move(problem)) {
    const Decomposition& dd = problem_.dd;
    const int n = dd.size();
    if (static_cast<int>(problem_.grids.size()) != n) throw std::invalid_argument("one time grid per subdomain expected");
    for (const TimeGrid& g : problem_.grids)
        if (std::abs(g.window() - problem_.grids[0].window()) > 1e-12 * g.window())
            throw std::invalid_argument("subdomain time grids cover different windows");
    for (int s = 0; s < n; ++s)
        solvers_.push_back(std::make_unique<SubdomainSolver>(make_subdomain_model(
            dd, s, problem_.diffusion, problem_.porosity, problem_.velocity, problem_.outer_bc, problem_.grids[s])));
    flow_ = classify_interface(dd, problem_.velocity);

    const auto& ifaces = dd.interfaces();
    const int nf = static_cast<int>(ifaces.size());
    sigma_a_.resize(nf);
    for (int f = 0; f < nf; ++f) {
        for (const InterfaceEdge& ie : ifaces[f].edges) {
            const auto cells = dd.mesh().edge_cells(ie.global_edge);
            // cells[0] lies on the side whose outward normal is the global one.
            const int ca = ie.outward[0] > 0 ? cells[0] : cells[1];
            const int cb = ie.outward[0] > 0 ? cells[1] : cells[0];
            const double da = problem_.diffusion[ca], db = problem_.diffusion[cb];
            sigma_a_[f].push_back(da / (da + db));
        }
    }
    if (!config.host.empty() && static_cast<int>(config.host.size()) != nf)
        throw std::invalid_argument("one host side per interface expected");
    host_.resize(nf);
    for (int f = 0; f < nf; ++f) {
        if (!config.host.empty()) {
            if (config.host[f] != 0 && config.host[f] != 1) throw std::invalid_argument("host side must be 0 or 1");
            host_[f] = config.host[f];
            continue;
        }
        const TimeGrid& ga = problem_.grids[ifaces[f].subdomains[0]];
        const TimeGrid& gb = problem_.grids[ifaces[f].subdomains[1]];
        if (gb.advection_slabs() != ga.advection_slabs()) host_[f] = gb.advection_slabs() > ga.advection_slabs();
        else host_[f] = gb.slabs() > ga.slabs();
    }
    if (!config.alpha.empty() && static_cast<int>(config.alpha.size()) != nf)
        throw std::invalid_argument("one Robin pair per interface expected");
    alpha_.resize(nf);
    for (int f = 0; f < nf; ++f) {
        alpha_[f] = config.alpha.empty() ? optimized_alpha(f) : config.alpha[f];
        if (!(alpha_[f][0] > 0.0) || !(alpha_[f][1] > 0.0)) throw std::invalid_argument("Robin parameters must be positive");
    }
}

std::array<double, 2> Multidomain::optimized_alpha(int f) const {
    const Decomposition& dd = problem_.dd;
    const Interface& iface = dd.interfaces().at(f);
    double sum_d[2] = {0, 0}, sum_phi[2] = {0, 0};
    for (const InterfaceEdge& ie : iface.edges) {
        const auto cells = dd.mesh().edge_cells(ie.global_edge);
        for (int k : cells) {
            const int side = dd.owner(k) == iface.subdomains[0] ? 0 : 1;
            sum_d[side] += problem_.diffusion[k];
            sum_phi[side] += problem_.porosity[k];
        }
    }
    const double m = static_cast<double>(iface.edges.size());
    SidePair p{sum_phi[0] / m, sum_d[0] / m, sum_phi[1] / m, sum_d[1] / m};
    const TimeGrid& ga = problem_.grids[iface.subdomains[0]];
    const TimeGrid& gb = problem_.grids[iface.subdomains[1]];
    const auto band = frequency_band(ga.window(), std::min(ga.step(), gb.step()));
    const RobinParameters r = optimize_robin(p, band);
    return {r.alpha12, r.alpha21};
}

void InterfaceSystem::precondition(std::span<const double> x, std::span<double> y) const {
    std::copy(x.begin(), x.end(), y.begin());
}

std::vector<double> InterfaceSystem::extend_final_slab(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    for (const Block& b : blocks_) {
        const int last = b.grid.slabs() - 1;
        for (int n = 0; n < last; ++n)
            for (int k = 0; k < b.width; ++k)
                out[b.offset + static_cast<std::size_t>(n) * b.width + k] =
                    x[b.offset + static_cast<std::size_t>(last) * b.width + k];
    }
    return out;
}

InterfaceTrace InterfaceSystem::gather(int s, std::span<const double> x, const TimeGrid& target,
                                       const std::function<int(int f, int side)>& block_of) const {
    const Subdomain& sd = md_.dd().subdomains()[s];
    const int ns = static_cast<int>(sd.slots.size());
    InterfaceTrace t = InterfaceTrace::zeros(target, ns);
    for (int f : sd.interfaces) {
        const Interface& iface = md_.dd().interfaces()[f];
        const int side = side_of(iface, s);
        const Block& b = blocks_[block_of(f, side)];
        const int base = iface.edges[0].slot[side];
        project_strided(b.grid, x, b.width, b.offset, target, t.values, ns, base, b.width);
    }
    return t;
}

void InterfaceSystem::scatter_add(int s, int f, const InterfaceTrace& trace, std::span<double> y, int bi) const {
    const Interface& iface = md_.dd().interfaces()[f];
    const int side = side_of(iface, s);
    const Block& b = blocks_[bi];
    const int base = iface.edges[0].slot[side];
    std::vector<double> tmp(static_cast<std::size_t>(b.grid.slabs()) * b.width);
    project_strided(trace.grid, trace.values, trace.width, base, b.grid, tmp, b.width, 0, b.width);
    for (std::size_t i = 0; i < tmp.size(); ++i) y[b.offset + i] += tmp[i];
}

namespace {

int total_size(const std::vector<InterfaceSystem::Block>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.grid.slabs() * b.width;
    return n;
}

SolveData solve_data(const WindowData* data, int s) {
    SolveData d;
    if (!data) return d;
    if (s < static_cast<int>(data->c0.size())) d.c0 = data->c0[s];
    d.source = data->source;
    d.t0 = data->t0;
    return d;
}

} // namespace

SchurSystem::SchurSystem(const Multidomain& md, bool neumann_neumann) : InterfaceSystem(md), nn_(neumann_neumann) {
    const auto& ifaces = md.dd().interfaces();
    int offset = 0;
    for (int f = 0; f < static_cast<int>(ifaces.size()); ++f) {
        const TimeGrid& hg = md.grid(ifaces[f].subdomains[md.host(f)]);
        const int w = static_cast<int>(ifaces[f].edges.size());
        blocks_.push_back({offset, hg.advection_grid(), w});
        offset += hg.advection_slabs() * w;
        blocks_.push_back({offset, hg, w});
        offset += hg.slabs() * w;
    }
    slot_sigma_.resize(md.size());
    for (int s = 0; s < md.size(); ++s) {
        const Subdomain& sd = md.dd().subdomains()[s];
        for (const InterfaceSlot& sl : sd.slots) {
            const double wa = md.weight_a(sl.interface)[sl.position];
            slot_sigma_[s].push_back(sl.side == 0 ? wa : 1.0 - wa);
        }
    }
}

int SchurSystem::size() const { return total_size(blocks_); }

void SchurSystem::sweep(std::span<const double> x, const WindowData* data, std::span<double> y) const {
    ++sweeps_;
    std::fill(y.begin(), y.end(), 0.0);
    for (int s = 0; s < md_.size(); ++s) {
        const TimeGrid& g = md_.grid(s);
        const auto la = gather(s, x, g.advection_grid(), [](int f, int) { return 2 * f; });
        const auto l = gather(s, x, g, [](int f, int) { return 2 * f + 1; });
        const SubdomainState st = md_.solver(s).solve_dirichlet(la, l, solve_data(data, s));
        const InterfaceTrace h = extract_H(md_.solver(s).model(), st);
        for (int f : md_.dd().subdomains()[s].interfaces) {
            scatter_add(s, f, h, y, 2 * f);
            scatter_add(s, f, extract_F(st), y, 2 * f + 1);
        }
    }
}

void SchurSystem::apply(std::span<const double> x, std::span<double> y) const {
    sweep(x, nullptr, y);
    for (std::size_t f = 0; f < blocks_.size(); f += 2) {
        const Block& a = blocks_[f];
        const Block& d = blocks_[f + 1];
        for (int i = 0; i < a.grid.slabs() * a.width; ++i) y[a.offset + i] = x[a.offset + i] - y[a.offset + i];
        for (int i = 0; i < d.grid.slabs() * d.width; ++i) y[d.offset + i] = -y[d.offset + i];
    }
}

std::vector<double> SchurSystem::rhs(const WindowData& data) const {
    std::vector<double> zero(size(), 0.0), y(size());
    sweep(zero, &data, y);
    return y;
}

void SchurSystem::precondition(std::span<const double> x, std::span<double> y) const {
    if (!nn_) {
        InterfaceSystem::precondition(x, y);
        return;
    }
    ++sweeps_;
    std::fill(y.begin(), y.end(), 0.0);
    for (int s = 0; s < md_.size(); ++s) {
        const TimeGrid& g = md_.grid(s);
        const auto la = gather(s, x, g.advection_grid(), [](int f, int) { return 2 * f; });
        const auto flux = gather(s, x, g, [](int f, int) { return 2 * f + 1; });
        const int ns = flux.width;
        const SubdomainState st = md_.solver(s).solve_neumann(la, flux);
        const InterfaceTrace h = extract_H(md_.solver(s).model(), st);
        InterfaceTrace tr = extract_Tr(st);
        for (int n = 0; n < g.slabs(); ++n)
            for (int k = 0; k < ns; ++k) tr.slab(n)[k] *= slot_sigma_[s][k];
        for (int f : md_.dd().subdomains()[s].interfaces) {
            scatter_add(s, f, h, y, 2 * f);
            scatter_add(s, f, tr, y, 2 * f + 1);
        }
    }
    for (std::size_t f = 0; f < blocks_.size(); f += 2) {
        const Block& a = blocks_[f];
        const Block& d = blocks_[f + 1];
        for (int i = 0; i < a.grid.slabs() * a.width; ++i) y[a.offset + i] = x[a.offset + i] - y[a.offset + i];
        for (int i = 0; i < d.grid.slabs() * d.width; ++i) y[d.offset + i] = -y[d.offset + i];
    }
}

Evaluation SchurSystem::evaluate(std::span<const double> x, const WindowData& data,
                                 const FieldObserver& observer) const {
    ++sweeps_;
    Evaluation ev;
    for (int s = 0; s < md_.size(); ++s) {
        const TimeGrid& g = md_.grid(s);
        const auto la = gather(s, x, g.advection_grid(), [](int f, int) { return 2 * f; });
        const auto l = gather(s, x, g, [](int f, int) { return 2 * f + 1; });
        SolveOptions opts;
        if (observer) opts.observer = [&](int n, const DiffusionStep& st) { observer(s, n, st); };
        ev.final_c.push_back(md_.solver(s).solve_dirichlet(la, l, solve_data(&data, s), opts).final_c);
    }
    return ev;
}

SchwarzSystem::SchwarzSystem(const Multidomain& md) : InterfaceSystem(md) {
    const auto& ifaces = md.dd().interfaces();
    int offset = 0;
    for (int f = 0; f < static_cast<int>(ifaces.size()); ++f) {
        const TimeGrid& hg = md.grid(ifaces[f].subdomains[md.host(f)]);
        const int w = static_cast<int>(ifaces[f].edges.size());
        blocks_.push_back({offset, hg.advection_grid(), w});
        offset += hg.advection_slabs() * w;
        for (int side = 0; side < 2; ++side) {
            const TimeGrid& g = md.grid(ifaces[f].subdomains[side]);
            blocks_.push_back({offset, g, w});
            offset += g.slabs() * w;
        }
    }
    slot_alpha_own_.resize(md.size());
    slot_alpha_other_.resize(md.size());
    for (int s = 0; s < md.size(); ++s) {
        for (const InterfaceSlot& sl : md.dd().subdomains()[s].slots) {
            slot_alpha_own_[s].push_back(md.alpha(sl.interface)[sl.side]);
            slot_alpha_other_[s].push_back(md.alpha(sl.interface)[1 - sl.side]);
        }
    }
}

int SchwarzSystem::size() const { return total_size(blocks_); }

void SchwarzSystem::transmit(std::span<const double> x, const WindowData* data, std::span<double> y,
                             const FieldObserver& observer, Evaluation* eval) const {
    ++sweeps_;
    std::fill(y.begin(), y.end(), 0.0);
    for (int s = 0; s < md_.size(); ++s) {
        const TimeGrid& g = md_.grid(s);
        const auto la = gather(s, x, g.advection_grid(), [](int f, int) { return 3 * f; });
        const auto xi = gather(s, x, g, [](int f, int side) { return 3 * f + 1 + side; });
        SolveOptions opts;
        if (observer) opts.observer = [&](int n, const DiffusionStep& st) { observer(s, n, st); };
        SubdomainState st = md_.solver(s).solve_robin(la, xi, slot_alpha_own_[s], solve_data(data, s), opts);
        const InterfaceTrace h = extract_H(md_.solver(s).model(), st);
        const InterfaceTrace b = extract_B(st, xi, slot_alpha_own_[s], slot_alpha_other_[s]);
        for (int f : md_.dd().subdomains()[s].interfaces) {
            const int side = side_of(md_.dd().interfaces()[f], s);
            scatter_add(s, f, h, y, 3 * f);
            scatter_add(s, f, b, y, 3 * f + 1 + (1 - side));
        }
        if (eval) eval->final_c.push_back(std::move(st.final_c));
    }
}

void SchwarzSystem::apply(std::span<const double> x, std::span<double> y) const {
    transmit(x, nullptr, y);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - y[i];
}

std::vector<double> SchwarzSystem::rhs(const WindowData& data) const {
    std::vector<double> zero(size(), 0.0), y(size());
    transmit(zero, &data, y);
    return y;
}

Evaluation SchwarzSystem::evaluate(std::span<const double> x, const WindowData& data,
                                   const FieldObserver& observer) const {
    Evaluation ev;
    std::vector<double> y(size());
    transmit(x, &data, y, observer, &ev);
    return ev;
}

std::unique_ptr<InterfaceSystem> make_system(const Multidomain& md, Method m) {
    switch (m) {
    case Method::schur: return std::make_unique<SchurSystem>(md, false);
    case Method::schur_nn: return std::make_unique<SchurSystem>(md, true);
    default: return std::make_unique<SchwarzSystem>(md);
    }
}

InterfaceSolution solve_interface(const InterfaceSystem& system, Method method, const WindowData& data,
                                  std::span<const double> x0, const MethodConfig& config,
                                  const IterationMonitor& monitor) {
    const int n = system.size();
    if (static_cast<int>(x0.size()) != n) throw std::invalid_argument("initial guess does not match the interface");
    InterfaceSolution sol;
    const std::vector<double> b = system.rhs(data);
    const int per_it = solves_per_iteration(method);

    if (method == Method::oswr_jacobi) {
        const auto* sw = dynamic_cast<const SchwarzSystem*>(&system);
        if (!sw) throw std::invalid_argument("Jacobi iterations need the Robin interface system");
        std::vector<double> x(x0.begin(), x0.end()), next(n);
        const double bnorm = norm2(b);
        const bool zero_x0 = std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
        double ref = (bnorm > 0.0 && !zero_x0) ? bnorm : -1.0;
        sol.stats.residuals.push_back(1.0);
        for (int k = 1; k <= config.max_iter; ++k) {
            sw->transmit(x, &data, next);
            double diff = 0.0;
            for (int i = 0; i < n; ++i) diff += (next[i] - x[i]) * (next[i] - x[i]);
            diff = std::sqrt(diff);
            if (!std::isfinite(diff)) throw std::runtime_error("Jacobi iteration produced a non-finite value");
            if (ref < 0.0) ref = diff > 0.0 ? diff : 1.0;
            const double rel = diff / ref;
            x.swap(next);
            sol.stats.iterations = k;
            sol.stats.subdomain_solves = static_cast<long>(k) * per_it;
            sol.stats.residuals.push_back(rel);
            if (diff == 0.0 || rel <= config.tol) {
                sol.stats.converged = true;
                sol.stats.stop_reason = "tolerance reached";
            }
            if (monitor && !monitor(k, sol.stats.subdomain_solves, rel, [&x]() { return x; })) {
                sol.stats.stop_reason = "stopped by monitor";
                break;
            }
            if (sol.stats.converged) break;
        }
        if (sol.stats.stop_reason.empty()) sol.stats.stop_reason = "iteration limit";
        sol.x = std::move(x);
        return sol;
    }

    LinearMap a = [&system](std::span<const double> x, std::span<double> y) { system.apply(x, y); };
    LinearMap p;
    if (system.has_preconditioner())
        p = [&system](std::span<const double> x, std::span<double> y) { system.precondition(x, y); };
    GmresOptions go{config.tol, config.max_iter, config.restart};
    GmresMonitor gm;
    if (monitor)
        gm = [&](int k, double rel, const std::function<std::vector<double>()>& it) {
            return monitor(k, static_cast<long>(k) * per_it, rel, it);
        };
    GmresResult r = gmres(a, b, x0, go, p, gm);
    sol.x = std::move(r.x);
    sol.stats.iterations = r.iterations;
    sol.stats.subdomain_solves = static_cast<long>(r.iterations) * per_it;
    sol.stats.converged = r.converged;
    sol.stats.residuals = std::move(r.residuals);
    sol.stats.stop_reason = std::move(r.stop_reason);
    return sol;
}

WindowRun run_time_windows(const Multidomain& md, const MethodConfig& config, const WindowData& first, int count,
                           bool warm_start, const std::function<void(int window, const Evaluation&)>& after_window,
                           const std::function<FieldObserver(int window)>& observer_for) {
    if (count < 1) throw std::invalid_argument("need at least one time window");
    auto system = make_system(md, config.method);
    WindowRun run;
    WindowData data = first;
    std::vector<double> x0(system->size(), 0.0);
    const double window = md.grid(0).window();
    for (int w = 0; w < count; ++w) {
        data.t0 = first.t0 + w * window;
        InterfaceSolution sol = solve_interface(*system, config.method, data, x0, config);
        Evaluation ev = system->evaluate(sol.x, data, observer_for ? observer_for(w) : FieldObserver{});
        if (after_window) after_window(w, ev);
        run.windows.push_back({w, sol.stats});
        data.c0 = ev.final_c;
        x0 = warm_start ? system->extend_final_slab(sol.x) : std::vector<double>(system->size(), 0.0);
        run.final_c = std::move(ev.final_c);
    }
    return run;
}

} // namespace stdd
