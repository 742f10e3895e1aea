#include "stdd/time_projection.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace stdd {

TimeGrid::TimeGrid(double window, int slabs, int substeps) : window_(window), slabs_(slabs), substeps_(substeps) {
    if (!(window > 0.0) || !std::isfinite(window)) throw std::invalid_argument("time window must be positive");
    if (slabs < 1 || substeps < 1) throw std::invalid_argument("time grid needs positive step counts");
}

namespace {

void check_windows(const TimeGrid& a, const TimeGrid& b) {
    if (std::abs(a.window() - b.window()) > 1e-12 * std::max(a.window(), b.window()))
        throw std::invalid_argument("time grids cover different windows");
}

} // namespace

std::vector<Overlap> overlaps(const TimeGrid& a, const TimeGrid& b) {
    check_windows(a, b);
    const std::int64_t na = a.slabs(), nb = b.slabs();
    const std::int64_t m = std::lcm(na, nb);
    const std::int64_t ua = m / na, ub = m / nb;
    const double unit = a.window() / static_cast<double>(m);
    std::vector<Overlap> out;
    out.reserve(static_cast<std::size_t>(na + nb));
    std::int64_t pos = 0;
    std::int64_t ia = 0, ib = 0;
    while (ia < na && ib < nb) {
        const std::int64_t ea = (ia + 1) * ua, eb = (ib + 1) * ub;
        const std::int64_t end = std::min(ea, eb);
        out.push_back({static_cast<int>(ia), static_cast<int>(ib), static_cast<double>(end - pos) * unit});
        pos = end;
        if (ea == end) ++ia;
        if (eb == end) ++ib;
    }
    return out;
}

void project_strided(const TimeGrid& from, std::span<const double> values, int stride, int offset,
                     const TimeGrid& to, std::span<double> out, int out_stride, int out_offset, int width) {
    check_windows(from, to);
    for (int m = 0; m < to.slabs(); ++m)
        for (int k = 0; k < width; ++k) out[static_cast<std::size_t>(m) * out_stride + out_offset + k] = 0.0;
    if (from.slabs() == to.slabs()) {
        for (int n = 0; n < from.slabs(); ++n)
            for (int k = 0; k < width; ++k)
                out[static_cast<std::size_t>(n) * out_stride + out_offset + k] =
                    values[static_cast<std::size_t>(n) * stride + offset + k];
        return;
    }
    // Weight of each overlap relative to the target slab, as an exact ratio.
    const std::int64_t na = from.slabs(), nb = to.slabs();
    const std::int64_t m = std::lcm(na, nb);
    const std::int64_t ua = m / na, ub = m / nb;
    std::int64_t pos = 0, ia = 0, ib = 0;
    while (ia < na && ib < nb) {
        const std::int64_t ea = (ia + 1) * ua, eb = (ib + 1) * ub;
        const std::int64_t end = std::min(ea, eb);
        const double w = static_cast<double>(end - pos) / static_cast<double>(ub);
        const double* src = values.data() + ia * stride + offset;
        double* dst = out.data() + ib * out_stride + out_offset;
        for (int k = 0; k < width; ++k) dst[k] += w * src[k];
        pos = end;
        if (ea == end) ++ia;
        if (eb == end) ++ib;
    }
}

std::vector<double> project(const TimeGrid& from, std::span<const double> values, const TimeGrid& to, int width) {
    if (width < 0 || values.size() != static_cast<std::size_t>(from.slabs()) * width)
        throw std::invalid_argument("trace size does not match the source grid");
    std::vector<double> out(static_cast<std::size_t>(to.slabs()) * width);
    project_strided(from, values, width, 0, to, out, width, 0, width);
    return out;
}

std::vector<double> project(std::span<const double> from_breaks, std::span<const double> values,
                            std::span<const double> to_breaks, int width) {
    if (from_breaks.size() < 2 || to_breaks.size() < 2) throw std::invalid_argument("partition needs two breakpoints");
    const std::size_t na = from_breaks.size() - 1, nb = to_breaks.size() - 1;
    if (values.size() != na * width) throw std::invalid_argument("trace size does not match the source partition");
    const double span_len = from_breaks.back() - from_breaks.front();
    if (std::abs(from_breaks.front() - to_breaks.front()) > 1e-12 * span_len ||
        std::abs(from_breaks.back() - to_breaks.back()) > 1e-12 * span_len)
        throw std::invalid_argument("partitions cover different windows");
    std::vector<double> out(nb * width, 0.0);
    std::size_t ia = 0, ib = 0;
    double pos = from_breaks.front();
    while (ia < na && ib < nb) {
        const double ea = ia + 1 == na ? to_breaks.back() : from_breaks[ia + 1];
        const double eb = to_breaks[ib + 1];
        const double end = std::min(ea, eb);
        const double w = (end - pos) / (to_breaks[ib + 1] - to_breaks[ib]);
        for (int k = 0; k < width; ++k) out[ib * width + k] += w * values[ia * width + k];
        pos = end;
        if (ea <= end) ++ia;
        if (eb <= end) ++ib;
    }
    return out;
}

} // namespace stdd
