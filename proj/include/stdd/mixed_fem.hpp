/**
 * @file mixed_fem.hpp
 * @brief Lowest-order Raviart-Thomas mixed discretization of diffusion on
 *        rectangles, solved through hybridization.
 *
 * Unknowns are one concentration per cell, one normal flux per edge and one
 * trace (Lagrange multiplier) per edge. Cell and flux unknowns are eliminated
 * locally; the trace system is sparse, symmetric positive definite and is
 * factorized once per operator.
 */
#pragma once

#include "stdd/mesh.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace stdd {

/// Condition imposed on an edge. Boundary edges must not be `interior`.
enum class EdgeCondition : std::uint8_t {
    interior,
    dirichlet, ///< trace given
    neumann,   ///< outward normal flux r.n given
    robin      ///< alpha*trace - r.n given, alpha per edge
};

/// Result of one backward-Euler diffusion step.
struct DiffusionStep {
    std::vector<double> c;     ///< per cell
    std::vector<double> flux;  ///< r.n per edge, global orientation
    std::vector<double> trace; ///< per edge
};

/// Factorized hybrid operator for fixed coefficients, step and edge conditions.
class DiffusionOperator {
public:
    /// `storage` holds phi|K|/tau per cell; all zeros gives a stationary
    /// problem. `robin_alpha` is read on robin edges only (may be empty when
    /// there are none). Throws std::invalid_argument on malformed input
    /// (non-positive diffusion, alpha <= 0 on a robin edge, interior edge
    /// flagged as boundary) and std::runtime_error when the trace system is
    /// singular.
    DiffusionOperator(const StructuredMesh& mesh, std::span<const double> diffusion, std::span<const double> storage,
                      std::vector<EdgeCondition> conditions, std::vector<double> robin_alpha = {});
    ~DiffusionOperator();
    DiffusionOperator(DiffusionOperator&&) noexcept;
    DiffusionOperator& operator=(DiffusionOperator&&) noexcept;

    const StructuredMesh& mesh() const { return mesh_; }
    const std::vector<EdgeCondition>& conditions() const { return conditions_; }

    /// Solves with cell right-hand side rhs_K = storage_K*c_old_K + |K| f_K and
    /// per-edge data (Dirichlet trace, outward Neumann flux or Robin data;
    /// ignored on interior edges). Reentrant.
    void solve(std::span<const double> cell_rhs, std::span<const double> edge_data, DiffusionStep& out) const;

    /// One time step: c_old and the source f (cell averages) are combined with
    /// the storage term.
    void step(std::span<const double> c_old, std::span<const double> source, std::span<const double> edge_data,
              DiffusionStep& out) const;

private:
    struct Cell {
        double gx, gy; // entries of the edge-to-edge flux block
        double s;      // 1 / (storage + sum of w)
    };
    struct Factor;

    StructuredMesh mesh_;
    std::vector<double> diffusion_;
    std::vector<double> storage_;
    std::vector<EdgeCondition> conditions_;
    std::vector<double> alpha_;
    std::vector<Cell> cells_;
    std::vector<int> unknown_; // edge -> row, -1 for Dirichlet edges
    std::unique_ptr<Factor> factor_;
};

/// Trace recovered from a cell value and its outward edge fluxes through the
/// mixed variational identity on cell k; equals the hybrid multiplier of the
/// edge. `outward_flux` holds r.n_K for the west, east, south, north edges.
double variational_trace(const StructuredMesh& mesh, int k, double diffusion, double c,
                         const std::array<double, 4>& outward_flux, int local_edge);

/// Stationary Darcy flow: -div(K grad p) = 0 with prescribed heads on the
/// sides that have one and no-flow on the others.
struct DarcyField {
    std::vector<double> head;     ///< per cell
    std::vector<double> velocity; ///< normal Darcy velocity per edge, global orientation
};

/// Throws std::invalid_argument when no side carries a head.
DarcyField solve_darcy(const StructuredMesh& mesh, std::span<const double> conductivity,
                       const std::array<std::optional<double>, 4>& side_head);

} // namespace stdd
