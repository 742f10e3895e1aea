/**
 * @file advection.hpp
 * @brief Explicit upwind finite volumes for phi dc/dt + div(u c) = 0.
 */
#pragma once

#include "stdd/mesh.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stdd {

/// Upwind edge values. `boundary_values` (size num_edges, read on boundary
/// edges only) supplies the inflow concentration. Outflow boundary edges take
/// the adjacent cell value, zero-velocity edges take 0. Throws
/// std::invalid_argument when an inflow boundary edge has a NaN value.
void upwind(const StructuredMesh& mesh, std::span<const double> edge_velocity, std::span<const double> c,
            std::span<const double> boundary_values, std::span<double> out);

std::vector<double> upwind(const StructuredMesh& mesh, std::span<const double> edge_velocity,
                           std::span<const double> c, std::span<const double> boundary_values);

/// c_out = c - tau_a/(phi|K|) sum_E chat_E |E| u.n_K. c_out may alias c.
void advection_substep(const StructuredMesh& mesh, std::span<const double> edge_velocity,
                       std::span<const double> porosity, double tau_a, std::span<const double> c,
                       std::span<const double> chat, std::span<double> c_out);

/// Largest stable explicit step min_K phi_K min(hx,hy) / max_E |u_E|;
/// +infinity when the velocity vanishes.
double cfl_step(const StructuredMesh& mesh, std::span<const double> edge_velocity, std::span<const double> porosity);

/// Message describing a violated step bound, empty when tau_a is admissible.
std::optional<std::string> cfl_diagnostic(const StructuredMesh& mesh, std::span<const double> edge_velocity,
                                          std::span<const double> porosity, double tau_a);

/// Smallest number of sub-steps of a step tau that satisfies the bound.
int substeps_for(double tau, double cfl);

/// Normal component per edge of a cellwise-constant velocity, averaging the
/// two adjacent cell values on interior edges.
std::vector<double> edge_velocity_from_cells(const StructuredMesh& mesh, std::span<const double> ux,
                                             std::span<const double> uy);

} // namespace stdd
