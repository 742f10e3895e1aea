/**
 * @file time_projection.hpp
 * @brief Uniform time grids and L2 projection of piecewise-constant traces.
 */
#pragma once

#include <span>
#include <vector>

namespace stdd {

/// Uniform partition of [0, window] into `slabs` diffusion steps, each split
/// into `substeps` advection sub-steps.
class TimeGrid {
public:
    TimeGrid() = default;
    /// Throws std::invalid_argument on a non-positive window or count.
    TimeGrid(double window, int slabs, int substeps = 1);

    double window() const { return window_; }
    int slabs() const { return slabs_; }
    int substeps() const { return substeps_; }
    double step() const { return window_ / slabs_; }
    double substep() const { return window_ / (static_cast<double>(slabs_) * substeps_); }
    int advection_slabs() const { return slabs_ * substeps_; }

    /// The same window partitioned into the advection sub-steps.
    TimeGrid advection_grid() const { return TimeGrid(window_, advection_slabs(), 1); }
    double slab_start(int n) const { return window_ * n / slabs_; }

    bool operator==(const TimeGrid&) const = default;

private:
    double window_ = 1.0;
    int slabs_ = 1;
    int substeps_ = 1;
};

/// Projects values stored slab-major ([slab][width]) from one uniform grid of
/// the window onto another. Overlaps are computed in exact integer arithmetic.
/// Throws std::invalid_argument when the windows differ or sizes mismatch.
std::vector<double> project(const TimeGrid& from, std::span<const double> values, const TimeGrid& to, int width);

/// Same as above, accumulating into `out` (sized to.slabs()*width) with
/// optional column stride: value (n, k) of the source lives at
/// values[n*stride + offset + k], and lands at out[m*out_stride + out_offset + k].
void project_strided(const TimeGrid& from, std::span<const double> values, int stride, int offset,
                     const TimeGrid& to, std::span<double> out, int out_stride, int out_offset, int width);

/// Projection between arbitrary partitions given by increasing breakpoints
/// t_0 < ... < t_N sharing both ends.
std::vector<double> project(std::span<const double> from_breaks, std::span<const double> values,
                            std::span<const double> to_breaks, int width);

/// Time-overlap segment between slab `from` of one grid and slab `to` of another.
struct Overlap {
    int from = 0;
    int to = 0;
    double length = 0.0;
};

/// All non-empty overlaps of two uniform grids of the same window, in time order.
std::vector<Overlap> overlaps(const TimeGrid& a, const TimeGrid& b);

} // namespace stdd
