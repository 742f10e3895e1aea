/**
 * @file output.hpp
 * @brief CSV tables and plain-text field snapshots.
 *
 * Snapshot layout (one token group per line, numbers printed with 17
 * significant digits so that reading gives back the same doubles):
 *
 *     # stdd snapshot 1
 *     time <t>
 *     size <nx> <ny>
 *     x <nx+1 vertex coordinates>
 *     y <ny+1 vertex coordinates>
 *     c                       followed by ny rows of nx cell values, row j = 0 first
 *     r <num_edges>           followed by one edge flux per line, edge order of
 *                             StructuredMesh (vertical edges row-major, then horizontal)
 */
#pragma once

#include "stdd/experiments.hpp"
#include "stdd/mesh.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace stdd {

/// iteration, solves, residual
void write_residual_csv(const std::filesystem::path& path, const SolveStats& stats, Method method);
/// solves, error_c, error_r (relative to the initial error)
void write_error_history_csv(const std::filesystem::path& path, const SolveCount& count);
void write_table_csv(const std::filesystem::path& path, const std::vector<TableRow>& rows);
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep);
void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceSeries>& series);
void write_windows_csv(const std::filesystem::path& path, const WindowCampaign& campaign);

struct Snapshot {
    double time = 0.0;
    std::vector<double> x, y;
    std::vector<double> c; ///< per global cell
    std::vector<double> r; ///< per global edge
};

/// Copies the last step seen of every subdomain into a global snapshot.
class SnapshotCollector {
public:
    explicit SnapshotCollector(const Decomposition& dd, double time = 0.0);
    FieldObserver observer();
    const Snapshot& snapshot() const { return snap_; }

private:
    const Decomposition& dd_;
    Snapshot snap_;
};

/// Throws std::runtime_error when the file cannot be written or parsed.
void write_snapshot(const std::filesystem::path& path, const Snapshot& s);
Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace stdd
