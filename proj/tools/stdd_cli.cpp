// Command-line driver: single solves, iteration tables, convergence in time,
// Robin parameter sweeps and time-window campaigns.

#include "stdd/experiments.hpp"
#include "stdd/output.hpp"
#include "stdd/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace stdd;

namespace {

struct Common {
    std::string scenario;
    std::string out = "out";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::string> method;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--scenario", c.scenario, "scenario file (YAML)")->required()->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_option("--seed", c.seed, "random seed (overrides the scenario)");
    app->add_option("--tol", c.tol, "relative residual tolerance");
    app->add_option("--method", c.method, "schur | schur-nn | oswr-jacobi | oswr-gmres");
}

ScenarioSpec load(const Common& c) {
    ScenarioSpec spec = load_scenario_file(c.scenario);
    if (c.seed) spec.seed = *c.seed;
    if (c.tol) spec.method.tol = *c.tol;
    if (c.method) spec.method.method = parse_method(*c.method);
    return spec;
}

int cmd_run(const Common& c) {
    const Scenario sc = build_scenario(load(c));
    std::cout << describe(sc);
    SnapshotCollector snap(sc.dd, sc.spec.window);
    const RunResult r = run_single(sc, sc.spec.method, snap.observer());
    const SolveStats& st = r.solution.stats;
    std::printf("%s: %d iterations, %ld subdomain solves, %s (%s), %.2f s\n", to_string(sc.spec.method.method).c_str(),
                st.iterations, st.subdomain_solves, st.converged ? "converged" : "not converged",
                st.stop_reason.c_str(), r.seconds);
    write_residual_csv(fs::path(c.out) / "residuals.csv", st, sc.spec.method.method);
    write_snapshot(fs::path(c.out) / "final.snapshot", snap.snapshot());
    return st.converged ? 0 : 2;
}

int cmd_table(const Common& c, const std::vector<double>& factors, const std::vector<std::string>& method_names,
              double reduction, int max_iter) {
    const ScenarioSpec spec = load(c);
    std::vector<Method> methods;
    for (const auto& m : method_names) methods.push_back(parse_method(m));
    const auto rows = run_iteration_table(spec, factors, methods, spec.seed, reduction, max_iter);
    std::printf("%8s", "nx");
    for (Method m : methods) std::printf("  %16s", to_string(m).c_str());
    std::printf("\n");
    bool all = true;
    for (const auto& row : rows) {
        std::printf("%8d", row.nx);
        for (const auto& cnt : row.counts) {
            char cell[40];
            std::snprintf(cell, sizeof cell, "%d [%d]", cnt.solves_c, cnt.solves_r);
            std::printf("  %16s", cell);
            all = all && cnt.solves_c >= 0 && cnt.solves_r >= 0;
        }
        std::printf("\n");
    }
    write_table_csv(fs::path(c.out) / "table.csv", rows);
    for (const auto& row : rows)
        for (const auto& cnt : row.counts)
            write_error_history_csv(fs::path(c.out) /
                                        ("history_nx" + std::to_string(row.nx) + "_" + to_string(cnt.method) + ".csv"),
                                    cnt);
    return all ? 0 : 2;
}

int cmd_time_order(const Common& c, int levels, int reference_steps, int fine, int coarse, int active) {
    const Scenario sc = build_scenario(load(c));
    std::cout << describe(sc);
    const auto families = standard_time_grids(sc.dd.size(), active, fine, coarse);
    const auto series = run_convergence_in_time(sc, families, levels, reference_steps, sc.spec.method);
    bool all = true;
    for (const auto& s : series) {
        std::printf("%s:", s.label.c_str());
        for (const auto& p : s.points) {
            std::printf(" %.4e", p.error.error_c);
            all = all && p.converged;
        }
        if (s.order_c) std::printf("  order c %.3f", *s.order_c);
        if (s.order_r) std::printf("  order r %.3f", *s.order_r);
        std::printf("\n");
    }
    write_convergence_csv(fs::path(c.out) / "convergence.csv", series);
    return all ? 0 : 2;
}

int cmd_sweep(const Common& c, int n, int iterations, std::optional<std::vector<double>> range) {
    const Scenario sc = build_scenario(load(c));
    std::optional<std::array<double, 2>> r;
    if (range) {
        if (range->size() != 2) throw std::invalid_argument("--range needs two values");
        r = std::array<double, 2>{(*range)[0], (*range)[1]};
    }
    const SweepResult res = run_alpha_sweep(sc, n, iterations, sc.spec.seed, r);
    std::printf("optimized pair (%.6g, %.6g): error_r %.4e; sweep minimum %.4e\n", res.optimized.alpha12,
                res.optimized.alpha21, res.optimized.error_r, res.min_error_r);
    write_sweep_csv(fs::path(c.out) / "sweep.csv", res);
    return 0;
}

int cmd_windows(const Common& c, std::optional<int> windows, bool compare) {
    const Scenario sc = build_scenario(load(c));
    std::cout << describe(sc);
    const int count = windows.value_or(sc.spec.windows);
    std::vector<std::unique_ptr<SnapshotCollector>> snaps(count);
    auto observer_for = [&](int w) -> FieldObserver {
        const auto& want = sc.spec.snapshot_windows;
        if (std::find(want.begin(), want.end(), w + 1) == want.end()) return {};
        snaps[w] = std::make_unique<SnapshotCollector>(sc.dd, (w + 1) * sc.spec.window);
        return snaps[w]->observer();
    };
    auto after = [&](int w, const Evaluation&) {
        if (!snaps[w]) return;
        write_snapshot(fs::path(c.out) / ("window_" + std::to_string(w + 1) + ".snapshot"), snaps[w]->snapshot());
        snaps[w].reset();
    };
    WindowCampaign camp;
    if (compare) {
        camp = run_window_campaign(sc, sc.spec.method, count, after, observer_for);
    } else {
        Multidomain md(sc.problem(), sc.spec.method);
        camp.warm = run_time_windows(md, sc.spec.method, sc.first_window(), count, true, after, observer_for);
    }
    bool all = true;
    for (std::size_t w = 0; w < camp.warm.windows.size(); ++w) {
        const auto& st = camp.warm.windows[w].stats;
        std::printf("window %zu: %d iterations%s", w + 1, st.iterations, st.converged ? "" : " (not converged)");
        if (compare) std::printf(", zero start %d", camp.cold.windows[w].stats.iterations);
        std::printf("\n");
        all = all && st.converged;
    }
    write_windows_csv(fs::path(c.out) / "windows.csv", camp);
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Global-in-time domain decomposition for advection-diffusion in porous media"};
    app.require_subcommand(1);
    Common common;

    auto* run = app.add_subcommand("run", "solve the first window of a scenario");
    add_common(run, common);

    auto* table = app.add_subcommand("table", "subdomain solves to reach an error reduction");
    add_common(table, common);
    std::vector<double> factors{0.5, 1.0};
    std::vector<std::string> methods{"schur", "schur-nn", "oswr-gmres", "oswr-jacobi"};
    double reduction = 1e-6;
    int table_max_iter = 200;
    table->add_option("--factors", factors, "space-time refinement factors")->capture_default_str();
    table->add_option("--methods", methods, "methods to compare")->capture_default_str();
    table->add_option("--reduction", reduction, "error reduction")->capture_default_str();
    table->add_option("--max-iter", table_max_iter, "iteration limit")->capture_default_str();

    auto* order = app.add_subcommand("time-order", "convergence in time with nonconforming grids");
    add_common(order, common);
    int levels = 4, ref_steps = 250 * 64, fine = 250, coarse = 50, active = 4;
    order->add_option("--levels", levels, "refinement levels")->capture_default_str();
    order->add_option("--reference-steps", ref_steps, "steps of the reference solution")->capture_default_str();
    order->add_option("--fine", fine, "fine step count at level 0")->capture_default_str();
    order->add_option("--coarse", coarse, "coarse step count at level 0")->capture_default_str();
    order->add_option("--active", active, "subdomain with its own step in grids 2 and 3")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "error surface over Robin parameter pairs");
    add_common(sweep, common);
    int n = 20, iterations = 15;
    std::optional<std::vector<double>> range;
    sweep->add_option("--n", n, "points per axis")->capture_default_str();
    sweep->add_option("--iterations", iterations, "Jacobi iterations")->capture_default_str();
    sweep->add_option("--range", range, "lo hi of both axes")->expected(2);

    auto* windows = app.add_subcommand("windows", "time-window campaign");
    add_common(windows, common);
    std::optional<int> window_count;
    bool compare = false;
    windows->add_option("--windows", window_count, "number of windows (default: scenario)");
    windows->add_flag("--compare", compare, "also run every window from a zero guess");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (*run) return cmd_run(common);
        if (*table) return cmd_table(common, factors, methods, reduction, table_max_iter);
        if (*order) return cmd_time_order(common, levels, ref_steps, fine, coarse, active);
        if (*sweep) return cmd_sweep(common, n, iterations, range);
        if (*windows) return cmd_windows(common, window_count, compare);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
