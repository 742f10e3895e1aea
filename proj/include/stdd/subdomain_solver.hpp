/**
 * @file subdomain_solver.hpp
 * @brief Space-time solution operators of one subdomain with operator
 *        splitting (explicit upwind advection sub-steps followed by one
 *        implicit mixed diffusion step), and the interface trace extractors.
 *
 * Interface data live on "slots": the interface edges of the subdomain in the
 * order given by Subdomain::slots. Traces are stored slab-major.
 */
#pragma once

#include "stdd/mesh.hpp"
#include "stdd/mixed_fem.hpp"
#include "stdd/time_projection.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace stdd {

/// Piecewise-constant-in-time values on the slots of one subdomain.
struct InterfaceTrace {
    TimeGrid grid;
    int width = 0;
    std::vector<double> values;

    static InterfaceTrace zeros(const TimeGrid& grid, int width);
    double* slab(int n) { return values.data() + static_cast<std::size_t>(n) * width; }
    const double* slab(int n) const { return values.data() + static_cast<std::size_t>(n) * width; }
};

/// Source term f(x, y, t); sampled at cell centres. `steady` sources are
/// sampled once per solve.
struct SourceTerm {
    std::function<double(double, double, double)> f;
    bool steady = true;
};

struct SubdomainModel {
    StructuredMesh mesh;
    std::vector<double> diffusion;       ///< per cell
    std::vector<double> porosity;        ///< per cell
    std::vector<double> velocity;        ///< normal velocity per edge, global orientation
    std::vector<EdgeCondition> outer;    ///< per edge; dirichlet or neumann on outer boundary edges
    std::vector<InterfaceSlot> slots;
    TimeGrid grid;
};

/// Builds the model of subdomain s of a decomposition from global fields.
/// `outer_bc` gives the condition of each side of the global domain.
SubdomainModel make_subdomain_model(const Decomposition& dd, int s, std::span<const double> diffusion,
                                    std::span<const double> porosity, std::span<const double> edge_velocity,
                                    const std::array<EdgeCondition, 4>& outer_bc, const TimeGrid& grid);

struct SolveData {
    std::span<const double> c0; ///< empty: zero initial condition
    const SourceTerm* source = nullptr;
    double t0 = 0.0; ///< absolute start time of the window
};

struct SolveOptions {
    bool keep_fields = false;
    /// Called after every diffusion step n (1-based) with the step result.
    std::function<void(int n, const DiffusionStep&)> observer;
};

struct SubdomainState {
    InterfaceTrace upwind; ///< chat on slots, advection grid
    InterfaceTrace flux;   ///< r.n_i (outward) on slots, diffusion grid
    InterfaceTrace trace;  ///< concentration trace on slots, diffusion grid
    std::vector<double> final_c;
    std::vector<std::vector<double>> c; ///< per step n = 1..N when kept
    std::vector<std::vector<double>> r; ///< per step, global orientation
};

class SubdomainSolver {
public:
    /// Throws std::invalid_argument on inconsistent sizes. Logs a warning when
    /// the advection sub-step exceeds the stability bound.
    explicit SubdomainSolver(SubdomainModel model);
    SubdomainSolver(const SubdomainSolver&) = delete;
    SubdomainSolver& operator=(const SubdomainSolver&) = delete;
    SubdomainSolver(SubdomainSolver&&) noexcept;
    ~SubdomainSolver();

    const SubdomainModel& model() const { return model_; }
    int num_slots() const { return static_cast<int>(model_.slots.size()); }

    /// lambda_a on the advection grid, lambda on the diffusion grid.
    SubdomainState solve_dirichlet(const InterfaceTrace& lambda_a, const InterfaceTrace& lambda,
                                   const SolveData& data, const SolveOptions& opts = {}) const;
    /// alpha per slot, all positive.
    SubdomainState solve_robin(const InterfaceTrace& lambda_a, const InterfaceTrace& xi, std::span<const double> alpha,
                               const SolveData& data, const SolveOptions& opts = {}) const;
    /// Zero source and initial condition; outward flux imposed on the slots.
    SubdomainState solve_neumann(const InterfaceTrace& lambda_a, const InterfaceTrace& flux,
                                 const SolveOptions& opts = {}) const;

    /// Number of solve_* calls so far.
    long solves() const;

private:
    enum class Kind { dirichlet, robin, neumann };
    std::shared_ptr<const DiffusionOperator> diffusion_operator(Kind kind, std::span<const double> alpha) const;
    SubdomainState run(Kind kind, const DiffusionOperator& op, const InterfaceTrace& lambda_a,
                       const InterfaceTrace& data_trace, const SolveData& data, const SolveOptions& opts) const;

    SubdomainModel model_;
    std::vector<double> storage_;
    bool has_advection_ = false;
    struct Cache;
    std::unique_ptr<Cache> cache_;
};

/// Upwind values on outflow slots and 0 on inflow and neutral slots.
InterfaceTrace extract_H(const SubdomainModel& model, const SubdomainState& state);
const InterfaceTrace& extract_F(const SubdomainState& state);
const InterfaceTrace& extract_Tr(const SubdomainState& state);
/// Outgoing Robin datum r.n_i + (alpha_ji/alpha_ij)(xi + r.n_i), per slot.
InterfaceTrace extract_B(const SubdomainState& state, const InterfaceTrace& xi, std::span<const double> alpha_ij,
                         std::span<const double> alpha_ji);

} // namespace stdd
