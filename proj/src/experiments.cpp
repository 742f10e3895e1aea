#include "stdd/experiments.hpp"

#include "stdd/advection.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace stdd {

FieldObserver fan_out(std::vector<FieldObserver> observers) {
    std::erase_if(observers, [](const FieldObserver& o) { return !o; });
    if (observers.empty()) return {};
    if (observers.size() == 1) return observers.front();
    return [obs = std::move(observers)](int s, int n, const DiffusionStep& st) {
        for (const auto& o : obs) o(s, n, st);
    };
}

RunResult run_single(const Scenario& sc, const MethodConfig& config, const FieldObserver& observer,
                     const IterationMonitor& monitor) {
    const auto start = std::chrono::steady_clock::now();
    Multidomain md(sc.problem(), config);
    auto system = make_system(md, config.method);
    const WindowData data = sc.first_window();
    const std::vector<double> x0(system->size(), 0.0);
    RunResult out;
    out.solution = solve_interface(*system, config.method, data, x0, config, monitor);
    out.evaluation = system->evaluate(out.solution.x, data, observer);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

Evaluation run_monodomain(const Scenario& sc, const TimeGrid& grid, const FieldObserver& observer) {
    MethodConfig cfg;
    cfg.method = Method::schur;
    Multidomain md(sc.monodomain(grid), cfg);
    SchurSystem system(md, false);
    return system.evaluate({}, sc.monodomain_window(), observer);
}

std::vector<double> random_guess(int size, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(size);
    for (double& v : x) v = dist(gen);
    return x;
}

namespace {

struct Norms {
    double c = 0.0, r = 0.0;
};

Norms zero_problem_norms(const InterfaceSystem& system, std::span<const double> x) {
    const Multidomain& md = system.multidomain();
    NormAccumulator acc(FieldLayout::multidomain(md.dd(), md.problem().grids));
    system.evaluate(x, WindowData{}, acc.observer());
    return {acc.norm_c(), acc.norm_r()};
}

TimeGrid grid_with_auto_substeps(double window, int steps, double cfl) {
    return TimeGrid(window, steps, substeps_for(window / steps, cfl));
}

} // namespace

SolveCount count_solves(const Scenario& sc, MethodConfig config, std::uint64_t seed, double reduction,
                        int max_iter) {
    Multidomain md(sc.problem(), config);
    auto system = make_system(md, config.method);
    SolveCount out;
    out.method = config.method;
    const std::vector<double> x0 = random_guess(system->size(), seed);
    const Norms e0 = zero_problem_norms(*system, x0);
    out.error_c.push_back(1.0);
    out.error_r.push_back(1.0);
    out.solves.push_back(0);
    if (e0.c == 0.0) out.solves_c = 0;
    if (e0.r == 0.0) out.solves_r = 0;
    if (out.solves_c == 0 && out.solves_r == 0) return out;

    config.tol = 0.0;
    config.max_iter = max_iter;
    auto monitor = [&](int k, long solves, double, const std::function<std::vector<double>()>& xf) {
        const Norms e = zero_problem_norms(*system, xf());
        const double rc = e0.c > 0.0 ? e.c / e0.c : 0.0;
        const double rr = e0.r > 0.0 ? e.r / e0.r : 0.0;
        out.error_c.push_back(rc);
        out.error_r.push_back(rr);
        out.solves.push_back(solves);
        out.iterations = k;
        if (out.solves_c < 0 && rc <= reduction) out.solves_c = static_cast<int>(solves);
        if (out.solves_r < 0 && rr <= reduction) out.solves_r = static_cast<int>(solves);
        return out.solves_c < 0 || out.solves_r < 0;
    };
    solve_interface(*system, config.method, WindowData{}, x0, config, monitor);
    return out;
}

std::vector<TableRow> run_iteration_table(const ScenarioSpec& spec, const std::vector<double>& factors,
                                          const std::vector<Method>& methods, std::uint64_t seed, double reduction,
                                          int max_iter) {
    std::vector<TableRow> rows;
    for (double f : factors) {
        const Scenario sc = build_scenario(refine(spec, f, f));
        TableRow row;
        row.nx = sc.mesh.nx();
        row.factor = f;
        for (Method m : methods) {
            MethodConfig cfg = spec.method;
            cfg.method = m;
            row.counts.push_back(count_solves(sc, cfg, seed, reduction, max_iter));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<TimeGridFamily> standard_time_grids(int subdomains, int active, int fine, int coarse) {
    if (active < 0 || active >= subdomains) throw std::invalid_argument("active subdomain out of range");
    std::vector<TimeGridFamily> out(4);
    out[0] = {"time grid 1", std::vector<int>(subdomains, fine)};
    out[1] = {"time grid 2", std::vector<int>(subdomains, coarse)};
    out[1].steps[active] = fine;
    out[2] = {"time grid 3", std::vector<int>(subdomains, fine)};
    out[2].steps[active] = coarse;
    out[3] = {"time grid 4", std::vector<int>(subdomains, coarse)};
    return out;
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
    if (x.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / den;
}

std::vector<ConvergenceSeries> run_convergence_in_time(const Scenario& sc, const std::vector<TimeGridFamily>& families,
                                                       int levels, int reference_steps, const MethodConfig& config) {
    if (levels < 1) throw std::invalid_argument("need at least one refinement level");
    const double window = sc.spec.window;
    const WindowData data = sc.first_window();
    double global_cfl = *std::min_element(sc.cfl_step.begin(), sc.cfl_step.end());
    const TimeGrid ref_grid = grid_with_auto_substeps(window, reference_steps, global_cfl);
    const FieldLayout ref_layout = FieldLayout::monodomain(sc.mesh, ref_grid);

    std::vector<ConvergenceSeries> out;
    for (const TimeGridFamily& fam : families) {
        if (static_cast<int>(fam.steps.size()) != sc.dd.size())
            throw std::invalid_argument("time grid family '" + fam.label + "' does not match the decomposition");
        ConvergenceSeries series;
        series.label = fam.label;
        std::vector<std::unique_ptr<FieldHistory>> histories;
        for (int l = 0; l < levels; ++l) {
            MultidomainProblem p = sc.problem();
            p.grids.clear();
            ConvergencePoint pt;
            pt.level = l;
            for (int s = 0; s < sc.dd.size(); ++s) {
                p.grids.push_back(grid_with_auto_substeps(window, fam.steps[s] << l, sc.cfl_step[s]));
                pt.max_step = std::max(pt.max_step, p.grids.back().step());
            }
            Multidomain md(p, config);
            auto system = make_system(md, config.method);
            const std::vector<double> x0(system->size(), 0.0);
            const InterfaceSolution sol = solve_interface(*system, config.method, data, x0, config);
            pt.iterations = sol.stats.iterations;
            pt.converged = sol.stats.converged;
            histories.push_back(std::make_unique<FieldHistory>(FieldLayout::multidomain(sc.dd, p.grids)));
            system->evaluate(sol.x, data, histories.back()->recorder());
            series.points.push_back(pt);
        }
        std::vector<std::unique_ptr<ErrorAccumulator>> accs;
        std::vector<FieldObserver> obs;
        for (const auto& h : histories) {
            accs.push_back(std::make_unique<ErrorAccumulator>(*h, ref_layout));
            obs.push_back(accs.back()->observer());
        }
        run_monodomain(sc, ref_grid, fan_out(std::move(obs)));
        std::vector<double> steps, ec, er;
        for (int l = 0; l < levels; ++l) {
            series.points[l].error = accs[l]->report();
            steps.push_back(series.points[l].max_step);
            ec.push_back(series.points[l].error.error_c);
            er.push_back(series.points[l].error.error_r);
        }
        series.order_c = loglog_slope(steps, ec);
        series.order_r = loglog_slope(steps, er);
        out.push_back(std::move(series));
    }
    return out;
}

SweepResult run_alpha_sweep(const Scenario& sc, int n, int iterations, std::uint64_t seed,
                            std::optional<std::array<double, 2>> range) {
    if (sc.dd.interfaces().size() != 1) throw std::invalid_argument("the Robin sweep needs exactly one interface");
    if (n < 2 || iterations < 1) throw std::invalid_argument("sweep needs n >= 2 and at least one iteration");
    MethodConfig base = sc.spec.method;
    base.method = Method::oswr_jacobi;
    base.alpha.clear();
    base.tol = 0.0;
    base.max_iter = iterations;
    const std::array<double, 2> opt = Multidomain(sc.problem(), base).optimized_alpha(0);
    const double lo = range ? (*range)[0] : 0.1 * std::min(opt[0], opt[1]);
    const double hi = range ? (*range)[1] : 10.0 * std::max(opt[0], opt[1]);
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("sweep range must satisfy 0 < lo < hi");

    auto run = [&](double a12, double a21) {
        MethodConfig cfg = base;
        cfg.alpha = {{a12, a21}};
        Multidomain md(sc.problem(), cfg);
        SchwarzSystem system(md);
        const std::vector<double> x0 = random_guess(system.size(), seed);
        const Norms e0 = zero_problem_norms(system, x0);
        const InterfaceSolution sol = solve_interface(system, cfg.method, WindowData{}, x0, cfg);
        const Norms e = zero_problem_norms(system, sol.x);
        return SweepPoint{a12, a21, e0.c > 0 ? e.c / e0.c : 0.0, e0.r > 0 ? e.r / e0.r : 0.0};
    };

    SweepResult out;
    out.min_error_r = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double a12 = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        for (int j = 0; j < n; ++j) {
            const double a21 = lo * std::pow(hi / lo, static_cast<double>(j) / (n - 1));
            out.points.push_back(run(a12, a21));
            out.min_error_r = std::min(out.min_error_r, out.points.back().error_r);
        }
    }
    out.optimized = run(opt[0], opt[1]);
    return out;
}

WindowCampaign run_window_campaign(const Scenario& sc, const MethodConfig& config, int windows,
                                   const std::function<void(int window, const Evaluation&)>& after_window,
                                   const std::function<FieldObserver(int window)>& observer_for) {
    Multidomain md(sc.problem(), config);
    const WindowData first = sc.first_window();
    WindowCampaign out;
    out.warm = run_time_windows(md, config, first, windows, true, after_window, observer_for);
    out.cold = run_time_windows(md, config, first, windows, false);
    return out;
}

namespace {

TransmissionResiduals measure_jumps(const InterfaceSystem& system, std::span<const double> x, const WindowData& data) {
    const Multidomain& md = system.multidomain();
    const auto& ifaces = md.dd().interfaces();
    // [interface][side] -> slab-major (step, edge) values
    std::vector<std::array<std::vector<double>, 2>> flux(ifaces.size()), trace(ifaces.size());
    for (std::size_t f = 0; f < ifaces.size(); ++f)
        for (int side = 0; side < 2; ++side) {
            const std::size_t n = ifaces[f].edges.size() * md.grid(ifaces[f].subdomains[side]).slabs();
            flux[f][side].assign(n, 0.0);
            trace[f][side].assign(n, 0.0);
        }
    auto observer = [&](int s, int step, const DiffusionStep& st) {
        for (std::size_t f = 0; f < ifaces.size(); ++f)
            for (int side = 0; side < 2; ++side) {
                if (ifaces[f].subdomains[side] != s) continue;
                const std::size_t m = ifaces[f].edges.size();
                for (std::size_t e = 0; e < m; ++e) {
                    const int le = ifaces[f].edges[e].local_edge[side];
                    flux[f][side][(step - 1) * m + e] = st.flux[le];
                    trace[f][side][(step - 1) * m + e] = st.trace[le];
                }
            }
    };
    system.evaluate(x, data, observer);
    TransmissionResiduals out;
    for (std::size_t f = 0; f < ifaces.size(); ++f) {
        const int m = static_cast<int>(ifaces[f].edges.size());
        const TimeGrid& ga = md.grid(ifaces[f].subdomains[0]);
        const TimeGrid& gb = md.grid(ifaces[f].subdomains[1]);
        const std::vector<double> fb = project(gb, flux[f][1], ga, m);
        const std::vector<double> tb = project(gb, trace[f][1], ga, m);
        for (std::size_t i = 0; i < fb.size(); ++i) {
            out.flux_jump += (flux[f][0][i] - fb[i]) * (flux[f][0][i] - fb[i]);
            out.flux_norm += flux[f][0][i] * flux[f][0][i];
            out.trace_jump += (trace[f][0][i] - tb[i]) * (trace[f][0][i] - tb[i]);
            out.trace_norm += trace[f][0][i] * trace[f][0][i];
        }
    }
    out.flux_jump = std::sqrt(out.flux_jump);
    out.flux_norm = std::sqrt(out.flux_norm);
    out.trace_jump = std::sqrt(out.trace_jump);
    out.trace_norm = std::sqrt(out.trace_norm);
    return out;
}

} // namespace

TransmissionResiduals transmission_residuals(const InterfaceSystem& system, std::span<const double> x,
                                             const WindowData& data) {
    TransmissionResiduals out = measure_jumps(system, x, data);
    const std::vector<double> zero(system.size(), 0.0);
    const TransmissionResiduals start = measure_jumps(system, zero, data);
    out.flux_jump0 = start.flux_jump;
    out.trace_jump0 = start.trace_jump;
    return out;
}

} // namespace stdd
