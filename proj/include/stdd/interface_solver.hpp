/**
 * @file interface_solver.hpp
 * @brief Global-in-time interface problems on a box decomposition: the
 *        Steklov-Poincare (Schur) formulation with an optional Neumann-Neumann
 *        preconditioner, and the Robin (optimized Schwarz) formulation solved
 *        by Jacobi or GMRES. Time grids may differ between subdomains.
 *
 * Interface vectors are packed per interface. Schur: [lambda_a | lambda] on
 * the host grids. Schwarz: [lambda_a | xi_a | xi_b] with xi on the diffusion
 * grid of its own side. Within a block values are slab-major over the
 * interface edges.
 */
#pragma once

#include "stdd/krylov.hpp"
#include "stdd/mesh.hpp"
#include "stdd/subdomain_solver.hpp"
#include "stdd/time_projection.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace stdd {

enum class Method : std::uint8_t { schur, schur_nn, oswr_jacobi, oswr_gmres };

std::string to_string(Method m);
/// Accepts schur, schur-nn, oswr-jacobi, oswr-gmres; throws std::invalid_argument otherwise.
Method parse_method(const std::string& name);
bool is_schwarz(Method m);

/// Global description of a multidomain transport problem.
struct MultidomainProblem {
    Decomposition dd;
    std::vector<double> diffusion;   ///< per global cell
    std::vector<double> porosity;    ///< per global cell
    std::vector<double> velocity;    ///< per global edge
    std::array<EdgeCondition, 4> outer_bc{EdgeCondition::dirichlet, EdgeCondition::dirichlet,
                                          EdgeCondition::dirichlet, EdgeCondition::dirichlet};
    std::vector<TimeGrid> grids;     ///< per subdomain
};

struct MethodConfig {
    Method method = Method::oswr_gmres;
    double tol = 1e-6;
    int max_iter = 200;
    int restart = 0;
    /// Per interface {alpha used by side a, alpha used by side b}; empty: optimized.
    std::vector<std::array<double, 2>> alpha;
    /// Per interface host side (0 = a, 1 = b) of lambda_a and lambda; empty:
    /// the side with the finer advection grid.
    std::vector<int> host;
};

/// Data of one time window.
struct WindowData {
    std::vector<std::vector<double>> c0; ///< per subdomain, empty entries mean zero
    const SourceTerm* source = nullptr;
    double t0 = 0.0;
};

/// Streams the fields of a sweep: subdomain, step (1-based), step result.
using FieldObserver = std::function<void(int subdomain, int step, const DiffusionStep&)>;

struct SolveStats {
    int iterations = 0;
    long subdomain_solves = 0; ///< sweeps over all subdomains charged to the iteration
    bool converged = false;
    std::vector<double> residuals;
    std::string stop_reason;
};

/// Multidomain problem with subdomain solvers, flow classification, weights
/// and Robin parameters fixed.
class Multidomain {
public:
    Multidomain(MultidomainProblem problem, const MethodConfig& config);

    const MultidomainProblem& problem() const { return problem_; }
    const Decomposition& dd() const { return problem_.dd; }
    int size() const { return problem_.dd.size(); }
    const SubdomainSolver& solver(int s) const { return *solvers_[s]; }
    const FlowClassification& flow() const { return flow_; }
    /// Weight of side a on each edge of interface f; side b has 1 - weight.
    const std::vector<double>& weight_a(int f) const { return sigma_a_[f]; }
    const std::array<double, 2>& alpha(int f) const { return alpha_[f]; }
    int host(int f) const { return host_[f]; }
    const TimeGrid& grid(int s) const { return problem_.grids[s]; }

    /// Optimized Robin pair for interface f from the mean coefficients of the
    /// cells adjacent to it.
    std::array<double, 2> optimized_alpha(int f) const;

private:
    MultidomainProblem problem_;
    std::vector<std::unique_ptr<SubdomainSolver>> solvers_;
    FlowClassification flow_;
    std::vector<std::vector<double>> sigma_a_;
    std::vector<std::array<double, 2>> alpha_;
    std::vector<int> host_;
};

/// Result of evaluating the subdomain solutions for given interface unknowns.
struct Evaluation {
    std::vector<std::vector<double>> final_c; ///< per subdomain
};

/// Common interface of the two formulations.
class InterfaceSystem {
public:
    explicit InterfaceSystem(const Multidomain& md) : md_(md) {}
    virtual ~InterfaceSystem() = default;

    const Multidomain& multidomain() const { return md_; }
    virtual int size() const = 0;
    /// Homogeneous operator (zero source and initial data).
    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
    virtual std::vector<double> rhs(const WindowData& data) const = 0;
    virtual bool has_preconditioner() const { return false; }
    virtual void precondition(std::span<const double> x, std::span<double> y) const;
    /// Subdomain solves with interface unknowns x and window data; fields go to
    /// `observer` when set.
    virtual Evaluation evaluate(std::span<const double> x, const WindowData& data,
                                const FieldObserver& observer = {}) const = 0;
    /// Constant-in-time extension of the final slab of every block.
    std::vector<double> extend_final_slab(std::span<const double> x) const;

    /// Block descriptor: offset, grid, width (= interface edges).
    struct Block {
        int offset = 0;
        TimeGrid grid;
        int width = 0;
    };
    const std::vector<Block>& blocks() const { return blocks_; }

    long sweeps() const { return sweeps_; }

protected:
    /// Trace on the slots of subdomain s assembled from per-interface blocks:
    /// block_of(f) gives the block index for interface f as seen by s.
    InterfaceTrace gather(int s, std::span<const double> x, const TimeGrid& target,
                          const std::function<int(int f, int side)>& block_of) const;
    /// Projects the columns of `trace` belonging to interface f onto block b
    /// and adds them into y.
    void scatter_add(int s, int f, const InterfaceTrace& trace, std::span<double> y, int b) const;

    const Multidomain& md_;
    std::vector<Block> blocks_;
    mutable long sweeps_ = 0;
};

/// Steklov-Poincare formulation; blocks 2f (lambda_a) and 2f+1 (lambda).
class SchurSystem : public InterfaceSystem {
public:
    SchurSystem(const Multidomain& md, bool neumann_neumann);
    int size() const override;
    void apply(std::span<const double> x, std::span<double> y) const override;
    std::vector<double> rhs(const WindowData& data) const override;
    bool has_preconditioner() const override { return nn_; }
    void precondition(std::span<const double> x, std::span<double> y) const override;
    Evaluation evaluate(std::span<const double> x, const WindowData& data,
                        const FieldObserver& observer = {}) const override;

private:
    void sweep(std::span<const double> x, const WindowData* data, std::span<double> y) const;
    bool nn_;
    std::vector<std::vector<double>> slot_sigma_; // per subdomain, per slot
};

/// Robin formulation; blocks 3f (lambda_a), 3f+1 (xi_a), 3f+2 (xi_b).
class SchwarzSystem : public InterfaceSystem {
public:
    explicit SchwarzSystem(const Multidomain& md);
    int size() const override;
    /// x - T(x, 0), T the Robin transmission sweep.
    void apply(std::span<const double> x, std::span<double> y) const override;
    /// T(0, data).
    std::vector<double> rhs(const WindowData& data) const override;
    /// y = T(x, data): one Jacobi (Schwarz waveform relaxation) step.
    void transmit(std::span<const double> x, const WindowData* data, std::span<double> y,
                  const FieldObserver& observer = {}, Evaluation* eval = nullptr) const;
    Evaluation evaluate(std::span<const double> x, const WindowData& data,
                        const FieldObserver& observer = {}) const override;

private:
    std::vector<std::vector<double>> slot_alpha_own_; // per subdomain, per slot
    std::vector<std::vector<double>> slot_alpha_other_;
};

std::unique_ptr<InterfaceSystem> make_system(const Multidomain& md, Method m);

/// Called after each iteration with (iteration, charged subdomain solves,
/// relative residual, current iterate). Returning false stops the solve.
using IterationMonitor =
    std::function<bool(int iteration, long solves, double residual, const std::function<std::vector<double>()>& x)>;

struct InterfaceSolution {
    std::vector<double> x;
    SolveStats stats;
};

/// Solves the interface problem of `system` for the window data starting from x0.
InterfaceSolution solve_interface(const InterfaceSystem& system, Method method, const WindowData& data,
                                  std::span<const double> x0, const MethodConfig& config,
                                  const IterationMonitor& monitor = {});

/// Sweeps charged per iteration: 2 for the preconditioned Schur method, else 1.
int solves_per_iteration(Method m);

struct WindowRecord {
    int window = 0;
    SolveStats stats;
};

struct WindowRun {
    std::vector<WindowRecord> windows;
    std::vector<std::vector<double>> final_c; ///< per subdomain
};

/// Runs `count` consecutive windows of the grid window length. With
/// `warm_start` the initial guess of window k+1 is the constant extension of
/// the final-slab traces of window k, otherwise zero. `after_window` receives
/// the converged state of each window; `observer_for(w)` may return an
/// observer for the fields of window w.
WindowRun run_time_windows(const Multidomain& md, const MethodConfig& config, const WindowData& first, int count,
                           bool warm_start,
                           const std::function<void(int window, const Evaluation&)>& after_window = {},
                           const std::function<FieldObserver(int window)>& observer_for = {});

} // namespace stdd
