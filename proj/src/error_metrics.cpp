#include "stdd/error_metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace stdd {

namespace {

FieldLayout::Part make_part(const StructuredMesh& local, const TimeGrid& grid, std::vector<int> cells,
                            std::vector<int> edges) {
    FieldLayout::Part p;
    p.grid = grid;
    p.cell_to_global = std::move(cells);
    p.edge_to_global = std::move(edges);
    p.cell_area.resize(local.num_cells());
    for (int k = 0; k < local.num_cells(); ++k) p.cell_area[k] = local.cell_area(k);
    p.edge_weight.resize(local.num_edges());
    for (int e = 0; e < local.num_edges(); ++e) p.edge_weight[e] = local.flux_weight(e);
    return p;
}

} // namespace

FieldLayout FieldLayout::monodomain(const StructuredMesh& mesh, const TimeGrid& grid) {
    FieldLayout l;
    l.global_cells = mesh.num_cells();
    l.global_edges = mesh.num_edges();
    std::vector<int> cells(mesh.num_cells()), edges(mesh.num_edges());
    for (int k = 0; k < mesh.num_cells(); ++k) cells[k] = k;
    for (int e = 0; e < mesh.num_edges(); ++e) edges[e] = e;
    l.parts.push_back(make_part(mesh, grid, std::move(cells), std::move(edges)));
    return l;
}

FieldLayout FieldLayout::multidomain(const Decomposition& dd, const std::vector<TimeGrid>& grids) {
    FieldLayout l;
    l.global_cells = dd.mesh().num_cells();
    l.global_edges = dd.mesh().num_edges();
    for (int s = 0; s < dd.size(); ++s) {
        const Subdomain& sd = dd.subdomains()[s];
        l.parts.push_back(make_part(sd.mesh, grids.at(s), sd.cell_to_global, sd.edge_to_global));
    }
    return l;
}

FieldHistory::FieldHistory(FieldLayout l) : layout(std::move(l)) {
    c.resize(layout.parts.size());
    r.resize(layout.parts.size());
    for (std::size_t p = 0; p < layout.parts.size(); ++p) {
        c[p].resize(layout.parts[p].grid.slabs());
        r[p].resize(layout.parts[p].grid.slabs());
    }
}

FieldObserver FieldHistory::recorder() {
    return [this](int part, int step, const DiffusionStep& s) {
        c.at(part).at(step - 1) = s.c;
        r.at(part).at(step - 1) = s.flux;
    };
}

ErrorAccumulator::ErrorAccumulator(const FieldHistory& candidate, const FieldLayout& reference)
    : cand_(candidate), ref_(reference) {
    const FieldLayout& cl = candidate.layout;
    if (cl.global_cells != ref_.global_cells || cl.global_edges != ref_.global_edges)
        throw std::invalid_argument("candidate and reference live on different meshes");
    // Reference location of every global cell and edge (first part wins for edges).
    std::vector<std::array<int, 2>> cell_loc(ref_.global_cells, {-1, -1}), edge_loc(ref_.global_edges, {-1, -1});
    for (int q = 0; q < static_cast<int>(ref_.parts.size()); ++q) {
        const auto& part = ref_.parts[q];
        for (int k = 0; k < static_cast<int>(part.cell_to_global.size()); ++k) cell_loc[part.cell_to_global[k]] = {q, k};
        for (int e = 0; e < static_cast<int>(part.edge_to_global.size()); ++e)
            if (edge_loc[part.edge_to_global[e]][0] < 0) edge_loc[part.edge_to_global[e]] = {q, e};
    }
    pairings_.resize(ref_.parts.size());
    for (int q = 0; q < static_cast<int>(ref_.parts.size()); ++q) {
        for (int p = 0; p < static_cast<int>(cl.parts.size()); ++p) {
            Pairing pr;
            pr.cand_part = p;
            const auto& cp = cl.parts[p];
            for (int k = 0; k < static_cast<int>(cp.cell_to_global.size()); ++k) {
                const auto loc = cell_loc[cp.cell_to_global[k]];
                if (loc[0] != q) continue;
                pr.cells.push_back({loc[1], k});
                pr.cell_w.push_back(cp.cell_area[k]);
            }
            for (int e = 0; e < static_cast<int>(cp.edge_to_global.size()); ++e) {
                const auto loc = edge_loc[cp.edge_to_global[e]];
                if (loc[0] != q) continue;
                pr.edges.push_back({loc[1], e});
                pr.edge_w.push_back(cp.edge_weight[e]);
            }
            if (pr.cells.empty() && pr.edges.empty()) continue;
            pr.overlaps = overlaps(ref_.parts[q].grid, cp.grid);
            pr.by_ref_slab.resize(ref_.parts[q].grid.slabs());
            for (int i = 0; i < static_cast<int>(pr.overlaps.size()); ++i)
                pr.by_ref_slab[pr.overlaps[i].from].push_back(i);
            pairings_[q].push_back(std::move(pr));
        }
    }
}

void ErrorAccumulator::add(int part, int step, const DiffusionStep& s) {
    const auto& rp = ref_.parts.at(part);
    const double tau = rp.grid.step();
    for (std::size_t k = 0; k < s.c.size(); ++k) ref_c_ += tau * rp.cell_area[k] * s.c[k] * s.c[k];
    for (std::size_t e = 0; e < s.flux.size(); ++e) ref_r_ += tau * rp.edge_weight[e] * s.flux[e] * s.flux[e];
    for (const Pairing& pr : pairings_[part]) {
        for (int oi : pr.by_ref_slab[step - 1]) {
            const Overlap& o = pr.overlaps[oi];
            const auto& cc = cand_.c[pr.cand_part][o.to];
            const auto& cr = cand_.r[pr.cand_part][o.to];
            if (cc.empty() || cr.empty()) throw std::logic_error("candidate history is incomplete");
            double sc = 0.0, sr = 0.0;
            for (std::size_t i = 0; i < pr.cells.size(); ++i) {
                const double d = cc[pr.cells[i][1]] - s.c[pr.cells[i][0]];
                sc += pr.cell_w[i] * d * d;
            }
            for (std::size_t i = 0; i < pr.edges.size(); ++i) {
                const double d = cr[pr.edges[i][1]] - s.flux[pr.edges[i][0]];
                sr += pr.edge_w[i] * d * d;
            }
            sum_c_ += o.length * sc;
            sum_r_ += o.length * sr;
        }
    }
}

FieldObserver ErrorAccumulator::observer() {
    return [this](int part, int step, const DiffusionStep& s) { add(part, step, s); };
}

ErrorReport ErrorAccumulator::report() const {
    return {std::sqrt(sum_c_), std::sqrt(sum_r_), std::sqrt(ref_c_), std::sqrt(ref_r_)};
}

ErrorReport compute_error(const FieldHistory& candidate, const FieldHistory& reference) {
    ErrorAccumulator acc(candidate, reference.layout);
    DiffusionStep s;
    for (std::size_t q = 0; q < reference.layout.parts.size(); ++q)
        for (std::size_t m = 0; m < reference.c[q].size(); ++m) {
            s.c = reference.c[q][m];
            s.flux = reference.r[q][m];
            acc.add(static_cast<int>(q), static_cast<int>(m) + 1, s);
        }
    return acc.report();
}

NormAccumulator::NormAccumulator(FieldLayout layout) : layout_(std::move(layout)) {}

void NormAccumulator::add(int part, int, const DiffusionStep& s) {
    const auto& p = layout_.parts.at(part);
    const double tau = p.grid.step();
    double sc = 0.0, sr = 0.0;
    for (std::size_t k = 0; k < s.c.size(); ++k) sc += p.cell_area[k] * s.c[k] * s.c[k];
    for (std::size_t e = 0; e < s.flux.size(); ++e) sr += p.edge_weight[e] * s.flux[e] * s.flux[e];
    c_ += tau * sc;
    r_ += tau * sr;
}

FieldObserver NormAccumulator::observer() {
    return [this](int part, int step, const DiffusionStep& s) { add(part, step, s); };
}

double NormAccumulator::norm_c() const { return std::sqrt(c_); }
double NormAccumulator::norm_r() const { return std::sqrt(r_); }

} // namespace stdd
