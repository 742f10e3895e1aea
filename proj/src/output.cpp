#include "stdd/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stdd {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("error while writing '" + path.string() + "'");
}

} // namespace

void write_residual_csv(const std::filesystem::path& path, const SolveStats& stats, Method method) {
    auto out = open_out(path);
    out << "iteration,solves,residual\n";
    const int per_it = solves_per_iteration(method);
    for (std::size_t k = 0; k < stats.residuals.size(); ++k)
        out << k << ',' << k * per_it << ',' << num(stats.residuals[k]) << '\n';
    finish(out, path);
}

void write_error_history_csv(const std::filesystem::path& path, const SolveCount& count) {
    auto out = open_out(path);
    out << "solves,error_c,error_r\n";
    for (std::size_t k = 0; k < count.solves.size(); ++k)
        out << count.solves[k] << ',' << num(count.error_c[k]) << ',' << num(count.error_r[k]) << '\n';
    finish(out, path);
}

void write_table_csv(const std::filesystem::path& path, const std::vector<TableRow>& rows) {
    auto out = open_out(path);
    out << "nx,factor,method,solves_c,solves_r,iterations\n";
    for (const TableRow& row : rows)
        for (const SolveCount& c : row.counts)
            out << row.nx << ',' << num(row.factor) << ',' << to_string(c.method) << ',' << c.solves_c << ','
                << c.solves_r << ',' << c.iterations << '\n';
    finish(out, path);
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& sweep) {
    auto out = open_out(path);
    out << "alpha12,alpha21,error_r,error_c,optimized\n";
    for (const SweepPoint& p : sweep.points)
        out << num(p.alpha12) << ',' << num(p.alpha21) << ',' << num(p.error_r) << ',' << num(p.error_c) << ",0\n";
    if (sweep.optimized.alpha12 > 0.0)
        out << num(sweep.optimized.alpha12) << ',' << num(sweep.optimized.alpha21) << ','
            << num(sweep.optimized.error_r) << ',' << num(sweep.optimized.error_c) << ",1\n";
    finish(out, path);
}

void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceSeries>& series) {
    auto out = open_out(path);
    out << "grid,level,max_step,error_c,error_r,relative_c,relative_r,iterations,converged\n";
    for (const ConvergenceSeries& s : series)
        for (const ConvergencePoint& p : s.points)
            out << s.label << ',' << p.level << ',' << num(p.max_step) << ',' << num(p.error.error_c) << ','
                << num(p.error.error_r) << ',' << num(p.error.relative_c()) << ',' << num(p.error.relative_r()) << ','
                << p.iterations << ',' << (p.converged ? 1 : 0) << '\n';
    finish(out, path);
}

void write_windows_csv(const std::filesystem::path& path, const WindowCampaign& campaign) {
    auto out = open_out(path);
    out << "window,warm_iterations,cold_iterations,warm_converged,cold_converged\n";
    const std::size_t n = std::max(campaign.warm.windows.size(), campaign.cold.windows.size());
    for (std::size_t w = 0; w < n; ++w) {
        out << w + 1;
        for (const WindowRun* run : {&campaign.warm, &campaign.cold})
            out << ',' << (w < run->windows.size() ? std::to_string(run->windows[w].stats.iterations) : "");
        for (const WindowRun* run : {&campaign.warm, &campaign.cold})
            out << ',' << (w < run->windows.size() ? (run->windows[w].stats.converged ? "1" : "0") : "");
        out << '\n';
    }
    finish(out, path);
}

SnapshotCollector::SnapshotCollector(const Decomposition& dd, double time) : dd_(dd) {
    const StructuredMesh& m = dd.mesh();
    snap_.time = time;
    snap_.x = m.x_coords();
    snap_.y = m.y_coords();
    snap_.c.assign(m.num_cells(), 0.0);
    snap_.r.assign(m.num_edges(), 0.0);
}

FieldObserver SnapshotCollector::observer() {
    return [this](int s, int, const DiffusionStep& st) {
        const Subdomain& sd = dd_.subdomains().at(s);
        for (std::size_t k = 0; k < st.c.size(); ++k) snap_.c[sd.cell_to_global[k]] = st.c[k];
        for (std::size_t e = 0; e < st.flux.size(); ++e) snap_.r[sd.edge_to_global[e]] = st.flux[e];
    };
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
    const std::size_t nx = s.x.size() - 1, ny = s.y.size() - 1;
    if (s.x.size() < 2 || s.y.size() < 2 || s.c.size() != nx * ny)
        throw std::invalid_argument("snapshot sizes are inconsistent");
    auto out = open_out(path);
    out << "# stdd snapshot 1\n";
    out << "time " << num(s.time) << '\n';
    out << "size " << nx << ' ' << ny << '\n';
    out << 'x';
    for (double v : s.x) out << ' ' << num(v);
    out << "\ny";
    for (double v : s.y) out << ' ' << num(v);
    out << "\nc\n";
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) out << (i ? " " : "") << num(s.c[j * nx + i]);
        out << '\n';
    }
    out << "r " << s.r.size() << '\n';
    for (double v : s.r) out << num(v) << '\n';
    finish(out, path);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    auto bad = [&](const std::string& what) { return std::runtime_error(path.string() + ": " + what); };
    std::string line, tag;
    if (!std::getline(in, line) || line.rfind("# stdd snapshot", 0) != 0) throw bad("missing snapshot header");
    Snapshot s;
    std::size_t nx = 0, ny = 0, ne = 0;
    if (!(in >> tag >> s.time) || tag != "time") throw bad("expected 'time'");
    if (!(in >> tag >> nx >> ny) || tag != "size" || nx == 0 || ny == 0) throw bad("expected 'size nx ny'");
    s.x.resize(nx + 1);
    s.y.resize(ny + 1);
    if (!(in >> tag) || tag != "x") throw bad("expected 'x'");
    for (double& v : s.x)
        if (!(in >> v)) throw bad("truncated x coordinates");
    if (!(in >> tag) || tag != "y") throw bad("expected 'y'");
    for (double& v : s.y)
        if (!(in >> v)) throw bad("truncated y coordinates");
    if (!(in >> tag) || tag != "c") throw bad("expected 'c'");
    s.c.resize(nx * ny);
    for (double& v : s.c)
        if (!(in >> v)) throw bad("truncated cell values");
    if (!(in >> tag >> ne) || tag != "r") throw bad("expected 'r count'");
    s.r.resize(ne);
    for (double& v : s.r)
        if (!(in >> v)) throw bad("truncated edge values");
    return s;
}

} // namespace stdd
