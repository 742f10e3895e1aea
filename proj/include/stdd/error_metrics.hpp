/**
 * @file error_metrics.hpp
 * @brief Space-time L2 norms and errors of piecewise-constant-in-time fields,
 *        possibly stored on different decompositions and time grids.
 *
 * Concentration: sum over steps of tau * sum_K |K| c_K^2. Flux: the same with
 * edge weights |E| * (sum of adjacent half cell widths across E), taken on
 * the mesh of the part that stores the edge.
 */
#pragma once

#include "stdd/interface_solver.hpp"
#include "stdd/mesh.hpp"
#include "stdd/time_projection.hpp"

#include <vector>

namespace stdd {

/// How a solution is split into parts, each with its own time grid.
struct FieldLayout {
    struct Part {
        TimeGrid grid;
        std::vector<int> cell_to_global;
        std::vector<int> edge_to_global;
        std::vector<double> cell_area;
        std::vector<double> edge_weight;
    };
    int global_cells = 0;
    int global_edges = 0;
    std::vector<Part> parts;

    static FieldLayout monodomain(const StructuredMesh& mesh, const TimeGrid& grid);
    static FieldLayout multidomain(const Decomposition& dd, const std::vector<TimeGrid>& grids);
};

/// Stored fields per part and step (local numbering, flux in global orientation).
struct FieldHistory {
    FieldLayout layout;
    std::vector<std::vector<std::vector<double>>> c; ///< [part][step-1][cell]
    std::vector<std::vector<std::vector<double>>> r; ///< [part][step-1][edge]

    explicit FieldHistory(FieldLayout l);
    /// Observer that records every step into this history.
    FieldObserver recorder();
};

struct ErrorReport {
    double error_c = 0.0;
    double error_r = 0.0;
    double norm_c = 0.0; ///< of the reference
    double norm_r = 0.0;
    double relative_c() const { return norm_c > 0.0 ? error_c / norm_c : error_c; }
    double relative_r() const { return norm_r > 0.0 ? error_r / norm_r : error_r; }
};

/// Accumulates candidate-minus-reference errors while reference steps stream in.
class ErrorAccumulator {
public:
    /// The candidate must outlive the accumulator.
    ErrorAccumulator(const FieldHistory& candidate, const FieldLayout& reference);
    void add(int part, int step, const DiffusionStep& s);
    FieldObserver observer();
    ErrorReport report() const;

private:
    struct Pairing {
        int cand_part = 0;
        std::vector<Overlap> overlaps;             // reference slab -> candidate slab
        std::vector<std::vector<int>> by_ref_slab; // indices into overlaps
        std::vector<std::array<int, 2>> cells;     // (reference local, candidate local)
        std::vector<double> cell_w;
        std::vector<std::array<int, 2>> edges;
        std::vector<double> edge_w;
    };
    const FieldHistory& cand_;
    FieldLayout ref_;
    std::vector<std::vector<Pairing>> pairings_; // per reference part
    double sum_c_ = 0.0, sum_r_ = 0.0, ref_c_ = 0.0, ref_r_ = 0.0;
};

ErrorReport compute_error(const FieldHistory& candidate, const FieldHistory& reference);

/// Space-time norms of a streamed solution.
class NormAccumulator {
public:
    explicit NormAccumulator(FieldLayout layout);
    void add(int part, int step, const DiffusionStep& s);
    FieldObserver observer();
    double norm_c() const;
    double norm_r() const;

private:
    FieldLayout layout_;
    double c_ = 0.0, r_ = 0.0;
};

} // namespace stdd
