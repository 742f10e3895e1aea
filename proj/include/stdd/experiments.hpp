/**
 * @file experiments.hpp
 * @brief Experiment drivers: single solves, monodomain references,
 *        iteration-count tables, convergence in time, Robin parameter sweeps,
 *        time-window campaigns and transmission residuals.
 *
 * All drivers are deterministic for a given seed.
 */
#pragma once

#include "stdd/error_metrics.hpp"
#include "stdd/interface_solver.hpp"
#include "stdd/scenario.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stdd {

/// Calls every non-empty observer in turn.
FieldObserver fan_out(std::vector<FieldObserver> observers);

struct RunResult {
    InterfaceSolution solution;
    Evaluation evaluation;
    double seconds = 0.0;
};

/// Solves the first window of the scenario from a zero guess and evaluates
/// the subdomain fields once more through `observer`.
RunResult run_single(const Scenario& sc, const MethodConfig& config, const FieldObserver& observer = {},
                     const IterationMonitor& monitor = {});

/// The same scheme without decomposition (one subdomain) on `grid`.
Evaluation run_monodomain(const Scenario& sc, const TimeGrid& grid, const FieldObserver& observer);

/// Uniform random guess in [-1, 1] for every interface unknown.
std::vector<double> random_guess(int size, std::uint64_t seed);

/// Solves counted until the space-time error of the zero-solution problem
/// drops below `reduction` times its value at the random initial guess.
struct SolveCount {
    Method method = Method::schur;
    int solves_c = -1; ///< -1: not reached
    int solves_r = -1;
    int iterations = 0;
    std::vector<double> error_c; ///< relative to the initial error, per iteration (index 0 = guess)
    std::vector<double> error_r;
    std::vector<long> solves;    ///< charged solves per entry of the error histories
};

SolveCount count_solves(const Scenario& sc, MethodConfig config, std::uint64_t seed, double reduction = 1e-6,
                        int max_iter = 200);

struct TableRow {
    int nx = 0;          ///< cells along x after refinement
    double factor = 1.0; ///< space and time refinement factor
    std::vector<SolveCount> counts;
};

/// One row per factor; the scenario is refined in space and time by the same
/// factor, keeping the mesh size to step ratio.
std::vector<TableRow> run_iteration_table(const ScenarioSpec& spec, const std::vector<double>& factors,
                                          const std::vector<Method>& methods, std::uint64_t seed,
                                          double reduction = 1e-6, int max_iter = 200);

/// Named per-subdomain step counts at refinement level 0.
struct TimeGridFamily {
    std::string label;
    std::vector<int> steps;
};

/// Time grids 1-4: conforming fine, fine in `active`, coarse in `active`,
/// conforming coarse.
std::vector<TimeGridFamily> standard_time_grids(int subdomains, int active, int fine, int coarse);

struct ConvergencePoint {
    int level = 0;
    double max_step = 0.0;
    ErrorReport error;
    int iterations = 0;
    bool converged = false;
};

struct ConvergenceSeries {
    std::string label;
    std::vector<ConvergencePoint> points;
    std::optional<double> order_c; ///< least-squares slope of log error vs log step
    std::optional<double> order_r;
};

/// Least-squares slope of log(y) against log(x); empty with fewer than two points.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// For every family and level 0..levels-1 (steps doubled per level) solves
/// the first window with `config` and measures the error against the
/// monodomain solution on `reference_steps` uniform steps.
std::vector<ConvergenceSeries> run_convergence_in_time(const Scenario& sc, const std::vector<TimeGridFamily>& families,
                                                       int levels, int reference_steps, const MethodConfig& config);

struct SweepPoint {
    double alpha12 = 0.0; ///< used by the first subdomain of the interface
    double alpha21 = 0.0;
    double error_c = 0.0; ///< relative to the initial error
    double error_r = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    SweepPoint optimized;
    double min_error_r = 0.0;
};

/// Error after `iterations` Jacobi steps from a random guess on the
/// zero-solution problem, over an n x n log grid of Robin pairs on
/// [lo, hi]^2 (defaults: a decade below and above the optimized pair).
/// Single-interface decompositions only.
SweepResult run_alpha_sweep(const Scenario& sc, int n, int iterations, std::uint64_t seed,
                            std::optional<std::array<double, 2>> range = std::nullopt);

struct WindowCampaign {
    WindowRun warm;
    WindowRun cold;
};

/// Runs the scenario windows twice: warm-started and zero-started.
WindowCampaign run_window_campaign(const Scenario& sc, const MethodConfig& config, int windows,
                                   const std::function<void(int window, const Evaluation&)>& after_window = {},
                                   const std::function<FieldObserver(int window)>& observer_for = {});

/// Interface jumps of the subdomain fields for interface unknowns x, side b
/// projected onto the diffusion grid of side a. Norms are Euclidean over
/// (slab, edge) entries. Costs two evaluations (x and the zero guess).
struct TransmissionResiduals {
    double flux_jump = 0.0;
    double flux_norm = 0.0;
    double trace_jump = 0.0;
    double trace_norm = 0.0;
    double flux_jump0 = 0.0; ///< jumps of the zero interface guess
    double trace_jump0 = 0.0;
    double relative_flux() const { return flux_norm > 0.0 ? flux_jump / flux_norm : flux_jump; }
    double relative_trace() const { return trace_norm > 0.0 ? trace_jump / trace_norm : trace_jump; }
    /// Jumps relative to those of the zero guess, the reference of the solver
    /// tolerance; falls back to relative_*() when the initial jump vanishes.
    double flux_reduction() const { return flux_jump0 > 0.0 ? flux_jump / flux_jump0 : relative_flux(); }
    double trace_reduction() const { return trace_jump0 > 0.0 ? trace_jump / trace_jump0 : relative_trace(); }
};

TransmissionResiduals transmission_residuals(const InterfaceSystem& system, std::span<const double> x,
                                             const WindowData& data);

} // namespace stdd
