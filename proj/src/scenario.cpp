#include "stdd/scenario.hpp"

#include "stdd/advection.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace stdd {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ScenarioError(path + ": " + what); }

YAML::Node merge(const YAML::Node& base, const YAML::Node& over) {
    if (!base.IsMap() || !over.IsMap()) return YAML::Clone(over);
    YAML::Node out = YAML::Clone(base);
    for (const auto& kv : over) {
        const std::string key = kv.first.as<std::string>();
        if (out[key] && out[key].IsMap() && kv.second.IsMap()) out[key] = merge(out[key], kv.second);
        else out[key] = YAML::Clone(kv.second);
    }
    return out;
}

YAML::Node resolve_includes(YAML::Node node, const std::filesystem::path& base_dir, int depth) {
    if (depth > 16) fail("include", "include nesting too deep");
    if (!node.IsMap() || !node["include"]) return node;
    const std::filesystem::path inc = base_dir / node["include"].as<std::string>();
    YAML::Node base;
    try {
        base = YAML::LoadFile(inc.string());
    } catch (const YAML::Exception& e) {
        fail("include", "cannot read '" + inc.string() + "': " + e.what());
    }
    base = resolve_includes(base, inc.parent_path(), depth + 1);
    YAML::Node self = YAML::Clone(node);
    self.remove("include");
    return merge(base, self);
}

template <class T>
T scalar(const YAML::Node& n, const std::string& path) {
    if (!n || !n.IsScalar()) fail(path, "expected a scalar");
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        fail(path, "cannot convert '" + n.Scalar() + "'");
    }
}

template <class T>
T optional_scalar(const YAML::Node& n, const std::string& key, const std::string& path, T fallback) {
    if (!n[key]) return fallback;
    return scalar<T>(n[key], path + "." + key);
}

double positive(double v, const std::string& path) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(path, "must be positive");
    return v;
}

template <std::size_t N>
std::array<double, N> numbers(const YAML::Node& n, const std::string& path) {
    if (!n.IsSequence() || n.size() != N) fail(path, "expected a list of " + std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = scalar<double>(n[i], path + "[" + std::to_string(i) + "]");
    return out;
}

void check_keys(const YAML::Node& n, const std::string& path, const std::set<std::string>& allowed) {
    if (!n.IsMap()) fail(path, "expected a map");
    for (const auto& kv : n) {
        const std::string k = kv.first.as<std::string>();
        if (!allowed.count(k)) fail(path + "." + k, "unknown key");
    }
}

std::vector<AxisSegment> parse_axis(const YAML::Node& n, const std::string& path) {
    if (!n || !n.IsSequence() || n.size() == 0) fail(path, "expected a non-empty list of segments");
    std::vector<AxisSegment> out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const YAML::Node s = n[i];
        check_keys(s, p, {"cells", "length", "first", "growth", "grow"});
        AxisSegment seg;
        seg.cells = scalar<int>(s["cells"], p + ".cells");
        if (seg.cells < 1) fail(p + ".cells", "must be at least 1");
        if (s["first"]) {
            seg.graded = true;
            seg.first = positive(scalar<double>(s["first"], p + ".first"), p + ".first");
            seg.growth = positive(optional_scalar<double>(s, "growth", p, 1.0), p + ".growth");
            const std::string dir = optional_scalar<std::string>(s, "grow", p, "forward");
            if (dir != "forward" && dir != "backward") fail(p + ".grow", "expected forward or backward");
            seg.grow_forward = dir == "forward";
        } else {
            seg.length = positive(scalar<double>(s["length"], p + ".length"), p + ".length");
        }
        out.push_back(seg);
    }
    return out;
}

Region parse_region(const YAML::Node& n, const std::string& path) {
    Region r;
    if (n["box"]) {
        r.box = numbers<4>(n["box"], path + ".box");
        if (!((*r.box)[0] < (*r.box)[1] && (*r.box)[2] < (*r.box)[3])) fail(path + ".box", "empty box");
    } else if (n["cells"]) {
        const auto c = numbers<4>(n["cells"], path + ".cells");
        r.cells = CellBox{static_cast<int>(c[0]), static_cast<int>(c[1]), static_cast<int>(c[2]), static_cast<int>(c[3])};
    } else {
        fail(path, "needs 'box' or 'cells'");
    }
    return r;
}

EdgeCondition parse_bc(const YAML::Node& n, const std::string& path) {
    const std::string v = scalar<std::string>(n, path);
    if (v == "dirichlet") return EdgeCondition::dirichlet;
    if (v == "neumann" || v == "no-flow") return EdgeCondition::neumann;
    fail(path, "expected dirichlet or neumann");
}

const char* kSides[4] = {"west", "east", "south", "north"};

} // namespace

ScenarioSpec parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ScenarioError(std::string("scenario: malformed YAML: ") + e.what());
    }
    root = resolve_includes(root, base_dir, 0);
    check_keys(root, "scenario",
               {"name", "notes", "units", "mesh", "zones", "subdomains", "velocity", "transport_bc",
                "initial_condition", "source", "time", "method", "seed", "output"});
    ScenarioSpec s;
    s.name = optional_scalar<std::string>(root, "name", "scenario", "unnamed");
    s.notes = optional_scalar<std::string>(root, "notes", "scenario", "");
    if (root["units"]) {
        check_keys(root["units"], "units", {"time"});
        const std::string t = optional_scalar<std::string>(root["units"], "time", "units", "seconds");
        if (t == "years") s.time_unit = kSecondsPerYear;
        else if (t != "seconds") fail("units.time", "expected seconds or years");
    }

    const YAML::Node mesh = root["mesh"];
    if (!mesh) fail("mesh", "missing");
    check_keys(mesh, "mesh", {"x", "y", "origin"});
    s.x = parse_axis(mesh["x"], "mesh.x");
    s.y = parse_axis(mesh["y"], "mesh.y");
    if (mesh["origin"]) s.origin = numbers<2>(mesh["origin"], "mesh.origin");

    const YAML::Node zones = root["zones"];
    if (!zones || !zones.IsSequence() || zones.size() == 0) fail("zones", "expected a non-empty list");
    for (std::size_t i = 0; i < zones.size(); ++i) {
        const std::string p = "zones[" + std::to_string(i) + "]";
        const YAML::Node z = zones[i];
        check_keys(z, p, {"name", "box", "cells", "porosity", "diffusion", "molecular_diffusion", "conductivity",
                          "velocity"});
        ZoneSpec zs;
        zs.name = optional_scalar<std::string>(z, "name", p, "zone" + std::to_string(i));
        zs.region = parse_region(z, p);
        zs.porosity = positive(scalar<double>(z["porosity"], p + ".porosity"), p + ".porosity");
        if (z["diffusion"]) zs.diffusion = scalar<double>(z["diffusion"], p + ".diffusion");
        else if (z["molecular_diffusion"])
            zs.diffusion = zs.porosity * scalar<double>(z["molecular_diffusion"], p + ".molecular_diffusion");
        else fail(p, "needs 'diffusion' or 'molecular_diffusion'");
        positive(zs.diffusion, p + ".diffusion");
        zs.diffusion /= s.time_unit;
        zs.conductivity = optional_scalar<double>(z, "conductivity", p, 0.0) / s.time_unit;
        if (z["velocity"]) {
            zs.velocity = numbers<2>(z["velocity"], p + ".velocity");
            zs.velocity[0] /= s.time_unit;
            zs.velocity[1] /= s.time_unit;
        }
        s.zones.push_back(zs);
    }

    const YAML::Node subs = root["subdomains"];
    if (!subs || !subs.IsSequence() || subs.size() == 0) fail("subdomains", "expected a non-empty list");
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string p = "subdomains[" + std::to_string(i) + "]";
        const YAML::Node n = subs[i];
        check_keys(n, p, {"box", "cells", "steps", "substeps"});
        SubdomainSpec sd;
        sd.region = parse_region(n, p);
        sd.steps = scalar<int>(n["steps"], p + ".steps");
        if (sd.steps < 1) fail(p + ".steps", "must be at least 1");
        if (n["substeps"]) {
            const std::string v = scalar<std::string>(n["substeps"], p + ".substeps");
            if (v != "auto") {
                sd.substeps = scalar<int>(n["substeps"], p + ".substeps");
                if (sd.substeps < 1) fail(p + ".substeps", "must be at least 1 or auto");
            }
        }
        s.subdomains.push_back(sd);
    }

    if (const YAML::Node v = root["velocity"]) {
        check_keys(v, "velocity", {"source", "head"});
        const std::string src = optional_scalar<std::string>(v, "source", "velocity", "zones");
        if (src == "darcy") s.velocity_source = VelocitySource::darcy;
        else if (src != "zones") fail("velocity.source", "expected zones or darcy");
        if (v["head"]) {
            check_keys(v["head"], "velocity.head", {"west", "east", "south", "north"});
            for (int k = 0; k < 4; ++k)
                if (v["head"][kSides[k]])
                    s.head[k] = scalar<double>(v["head"][kSides[k]], std::string("velocity.head.") + kSides[k]);
        }
        if (s.velocity_source == VelocitySource::darcy &&
            std::none_of(s.head.begin(), s.head.end(), [](const auto& h) { return h.has_value(); }))
            fail("velocity.head", "Darcy flow needs a head on at least one side");
    }
    if (const YAML::Node bc = root["transport_bc"]) {
        check_keys(bc, "transport_bc", {"west", "east", "south", "north"});
        for (int k = 0; k < 4; ++k)
            if (bc[kSides[k]]) s.transport_bc[k] = parse_bc(bc[kSides[k]], std::string("transport_bc.") + kSides[k]);
    }
    if (const YAML::Node ic = root["initial_condition"]) {
        check_keys(ic, "initial_condition", {"type", "zones", "value"});
        const std::string t = optional_scalar<std::string>(ic, "type", "initial_condition", "zero");
        if (t == "zero") s.initial = InitialKind::zero;
        else if (t == "bump") s.initial = InitialKind::bump;
        else if (t == "zones") {
            s.initial = InitialKind::zones;
            if (!ic["zones"] || !ic["zones"].IsSequence()) fail("initial_condition.zones", "expected a list of zone names");
            for (std::size_t i = 0; i < ic["zones"].size(); ++i)
                s.initial_zones.push_back(scalar<std::string>(ic["zones"][i], "initial_condition.zones"));
            s.initial_value = optional_scalar<double>(ic, "value", "initial_condition", 1.0);
            for (const auto& zn : s.initial_zones)
                if (std::none_of(s.zones.begin(), s.zones.end(), [&](const ZoneSpec& z) { return z.name == zn; }))
                    fail("initial_condition.zones", "unknown zone '" + zn + "'");
        } else fail("initial_condition.type", "expected zero, bump or zones");
    }
    if (const YAML::Node src = root["source"]) {
        check_keys(src, "source", {"type", "center", "sharpness"});
        const std::string t = optional_scalar<std::string>(src, "type", "source", "zero");
        if (t == "gaussian") {
            s.source = SourceKind::gaussian;
            if (src["center"]) s.source_center = numbers<2>(src["center"], "source.center");
            s.source_sharpness = optional_scalar<double>(src, "sharpness", "source", 100.0);
        } else if (t != "zero") fail("source.type", "expected zero or gaussian");
    }
    const YAML::Node time = root["time"];
    if (!time) fail("time", "missing");
    check_keys(time, "time", {"window", "windows", "snapshots"});
    s.window = positive(scalar<double>(time["window"], "time.window"), "time.window") * s.time_unit;
    s.windows = optional_scalar<int>(time, "windows", "time", 1);
    if (s.windows < 1) fail("time.windows", "must be at least 1");
    if (time["snapshots"]) {
        if (!time["snapshots"].IsSequence()) fail("time.snapshots", "expected a list of window numbers");
        for (std::size_t i = 0; i < time["snapshots"].size(); ++i)
            s.snapshot_windows.push_back(scalar<int>(time["snapshots"][i], "time.snapshots"));
    }
    if (const YAML::Node m = root["method"]) {
        check_keys(m, "method", {"name", "tol", "max_iter", "restart", "alpha", "host"});
        try {
            s.method.method = parse_method(optional_scalar<std::string>(m, "name", "method", "oswr-gmres"));
        } catch (const std::invalid_argument& e) {
            fail("method.name", e.what());
        }
        s.method.tol = positive(optional_scalar<double>(m, "tol", "method", 1e-6), "method.tol");
        s.method.max_iter = optional_scalar<int>(m, "max_iter", "method", 200);
        s.method.restart = optional_scalar<int>(m, "restart", "method", 0);
        if (m["alpha"]) {
            for (std::size_t i = 0; i < m["alpha"].size(); ++i) {
                const std::string p = "method.alpha[" + std::to_string(i) + "]";
                auto a = numbers<2>(m["alpha"][i], p);
                s.method.alpha.push_back({positive(a[0], p), positive(a[1], p)});
            }
        }
        if (m["host"])
            for (std::size_t i = 0; i < m["host"].size(); ++i) s.method.host.push_back(scalar<int>(m["host"][i], "method.host"));
    }
    s.seed = optional_scalar<std::uint64_t>(root, "seed", "scenario", 1);
    return s;
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.parent_path());
}

namespace {

std::vector<double> axis_coords(double origin, const std::vector<AxisSegment>& segs) {
    std::vector<double> c{origin};
    for (const AxisSegment& s : segs) {
        const double start = c.back();
        if (s.graded) {
            std::vector<double> w(s.cells);
            double h = s.first;
            for (int k = 0; k < s.cells; ++k) {
                w[k] = h;
                h *= s.growth;
            }
            if (!s.grow_forward) std::reverse(w.begin(), w.end());
            for (double x : w) c.push_back(c.back() + x);
        } else {
            for (int k = 1; k <= s.cells; ++k) c.push_back(start + s.length * k / s.cells);
        }
    }
    return c;
}

CellBox region_box(const Region& r, const StructuredMesh& m, const std::string& path) {
    if (r.cells) {
        const CellBox& b = *r.cells;
        if (b.i0 < 0 || b.j0 < 0 || b.i1 > m.nx() || b.j1 > m.ny() || b.i0 >= b.i1 || b.j0 >= b.j1)
            fail(path, "cell box is empty or outside the mesh");
        return b;
    }
    const auto& bx = *r.box;
    CellBox b{m.nx(), -1, m.ny(), -1};
    for (int i = 0; i < m.nx(); ++i) {
        const double xc = 0.5 * (m.x_coords()[i] + m.x_coords()[i + 1]);
        if (xc > bx[0] && xc < bx[1]) {
            b.i0 = std::min(b.i0, i);
            b.i1 = std::max(b.i1, i + 1);
        }
    }
    for (int j = 0; j < m.ny(); ++j) {
        const double yc = 0.5 * (m.y_coords()[j] + m.y_coords()[j + 1]);
        if (yc > bx[2] && yc < bx[3]) {
            b.j0 = std::min(b.j0, j);
            b.j1 = std::max(b.j1, j + 1);
        }
    }
    if (b.i1 < 0 || b.j1 < 0) fail(path, "box contains no cell centre");
    return b;
}

double test1_bump(double x, double y) {
    return x * y * (1 - x) * (1 - y) * std::exp(-100 * ((x - 0.2) * (x - 0.2) + (y - 0.2) * (y - 0.2)));
}

} // namespace

Scenario build_scenario(const ScenarioSpec& spec) {
    Scenario sc;
    sc.spec = spec;
    try {
        sc.mesh = StructuredMesh(axis_coords(spec.origin[0], spec.x), axis_coords(spec.origin[1], spec.y));
    } catch (const std::invalid_argument& e) {
        fail("mesh", e.what());
    }
    const StructuredMesh& m = sc.mesh;
    const int nc = m.num_cells();
    if (spec.zones.empty()) fail("zones", "expected a non-empty list");
    sc.cell_zone.assign(nc, -1);
    // Later zones take precedence where zones overlap.
    for (std::size_t z = 0; z < spec.zones.size(); ++z) {
        const CellBox b = region_box(spec.zones[z].region, m, "zones[" + std::to_string(z) + "]");
        for (int j = b.j0; j < b.j1; ++j)
            for (int i = b.i0; i < b.i1; ++i) sc.cell_zone[m.cell(i, j)] = static_cast<int>(z);
    }
    for (int k = 0; k < nc; ++k)
        if (sc.cell_zone[k] < 0) fail("zones", "cell " + std::to_string(k) + " belongs to no zone");
    sc.diffusion.resize(nc);
    sc.porosity.resize(nc);
    sc.conductivity.resize(nc);
    std::vector<double> ux(nc), uy(nc);
    for (int k = 0; k < nc; ++k) {
        const ZoneSpec& z = spec.zones[sc.cell_zone[k]];
        sc.diffusion[k] = z.diffusion;
        sc.porosity[k] = z.porosity;
        sc.conductivity[k] = z.conductivity;
        ux[k] = z.velocity[0];
        uy[k] = z.velocity[1];
    }
    if (spec.velocity_source == VelocitySource::darcy) {
        for (int k = 0; k < nc; ++k)
            if (!(sc.conductivity[k] > 0.0))
                fail("zones[" + std::to_string(sc.cell_zone[k]) + "].conductivity", "must be positive for Darcy flow");
        sc.darcy = solve_darcy(m, sc.conductivity, spec.head);
        sc.velocity = sc.darcy->velocity;
    } else {
        sc.velocity = edge_velocity_from_cells(m, ux, uy);
    }

    std::vector<CellBox> boxes;
    for (std::size_t s = 0; s < spec.subdomains.size(); ++s)
        boxes.push_back(region_box(spec.subdomains[s].region, m, "subdomains[" + std::to_string(s) + "]"));
    try {
        sc.dd = Decomposition(m, boxes);
    } catch (const std::invalid_argument& e) {
        fail("subdomains", e.what());
    }
    for (int s = 0; s < sc.dd.size(); ++s) {
        const Subdomain& sd = sc.dd.subdomains()[s];
        const auto u = sc.dd.restrict_edges(s, sc.velocity);
        const auto phi = sc.dd.restrict_cells(s, sc.porosity);
        const auto d = sc.dd.restrict_cells(s, sc.diffusion);
        const double cfl = cfl_step(sd.mesh, u, phi);
        sc.cfl_step.push_back(cfl);
        double pe = 0.0;
        for (int k = 0; k < sd.mesh.num_cells(); ++k) {
            const auto edges = sd.mesh.cell_edges(k);
            const double uxk = 0.5 * (u[edges[0]] + u[edges[1]]), uyk = 0.5 * (u[edges[2]] + u[edges[3]]);
            const double h = std::max(sd.mesh.dx(sd.mesh.cell_i(k)), sd.mesh.dy(sd.mesh.cell_j(k)));
            pe = std::max(pe, std::hypot(uxk, uyk) * h / d[k]);
        }
        sc.peclet.push_back(pe);
        const SubdomainSpec& ss = spec.subdomains[s];
        const double tau = spec.window / ss.steps;
        int l = ss.substeps;
        if (l == 0) {
            l = substeps_for(tau, cfl);
        } else if (tau / l > cfl * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "advection step " << tau / l << " exceeds the stability bound " << cfl << " of subdomain " << s;
            fail("subdomains[" + std::to_string(s) + "].substeps", os.str());
        }
        sc.grids.emplace_back(spec.window, ss.steps, l);
    }

    sc.c0.assign(nc, 0.0);
    if (spec.initial == InitialKind::bump) {
        // Cell averages by 3-point Gauss quadrature per direction.
        const double g[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
        const double w[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};
        for (int k = 0; k < nc; ++k) {
            const auto c = m.cell_center(k);
            const double hx = m.dx(m.cell_i(k)), hy = m.dy(m.cell_j(k));
            double v = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) v += w[a] * w[b] * test1_bump(c[0] + 0.5 * hx * g[a], c[1] + 0.5 * hy * g[b]);
            sc.c0[k] = v;
        }
    } else if (spec.initial == InitialKind::zones) {
        for (int k = 0; k < nc; ++k) {
            const std::string& zn = spec.zones[sc.cell_zone[k]].name;
            if (std::find(spec.initial_zones.begin(), spec.initial_zones.end(), zn) != spec.initial_zones.end())
                sc.c0[k] = spec.initial_value;
        }
    }
    if (spec.source == SourceKind::gaussian) {
        const double cx = spec.source_center[0], cy = spec.source_center[1], a = spec.source_sharpness;
        sc.source.f = [cx, cy, a](double x, double y, double) {
            return std::exp(-a * ((x - cx) * (x - cx) + (y - cy) * (y - cy)));
        };
        sc.source.steady = true;
    }
    return sc;
}

MultidomainProblem Scenario::problem() const {
    MultidomainProblem p;
    p.dd = dd;
    p.diffusion = diffusion;
    p.porosity = porosity;
    p.velocity = velocity;
    p.outer_bc = spec.transport_bc;
    p.grids = grids;
    return p;
}

WindowData Scenario::first_window() const {
    WindowData w;
    for (int s = 0; s < dd.size(); ++s) w.c0.push_back(dd.restrict_cells(s, c0));
    w.source = source.f ? &source : nullptr;
    return w;
}

MultidomainProblem Scenario::monodomain(const TimeGrid& grid) const {
    MultidomainProblem p;
    p.dd = Decomposition(mesh, {CellBox{0, mesh.nx(), 0, mesh.ny()}});
    p.diffusion = diffusion;
    p.porosity = porosity;
    p.velocity = velocity;
    p.outer_bc = spec.transport_bc;
    p.grids = {grid};
    return p;
}

WindowData Scenario::monodomain_window() const {
    WindowData w;
    w.c0.push_back(c0);
    w.source = source.f ? &source : nullptr;
    return w;
}

ScenarioSpec refine(const ScenarioSpec& spec, double space_factor, double time_factor) {
    if (!(space_factor > 0.0) || !(time_factor > 0.0)) throw ScenarioError("refine: factors must be positive");
    auto scale = [&](int n, const std::string& path) {
        const double v = n * space_factor;
        const long r = std::lround(v);
        if (std::abs(v - static_cast<double>(r)) > 1e-9) fail(path, "refinement does not give an integer cell count");
        return static_cast<int>(r);
    };
    ScenarioSpec out = spec;
    for (auto* axis : {&out.x, &out.y})
        for (AxisSegment& s : *axis) {
            if (s.graded && space_factor != 1.0) fail("mesh", "graded segments cannot be refined");
            s.cells = scale(s.cells, "mesh");
        }
    auto scale_region = [&](Region& r, const std::string& path) {
        if (!r.cells) return;
        CellBox& b = *r.cells;
        b = CellBox{scale(b.i0, path), scale(b.i1, path), scale(b.j0, path), scale(b.j1, path)};
    };
    for (ZoneSpec& z : out.zones) scale_region(z.region, "zones");
    for (SubdomainSpec& s : out.subdomains) {
        scale_region(s.region, "subdomains");
        s.steps = std::max(1, static_cast<int>(std::lround(s.steps * time_factor)));
        s.substeps = 0;
    }
    return out;
}

std::string describe(const Scenario& s) {
    std::ostringstream os;
    os << "scenario " << s.spec.name << ": " << s.mesh.nx() << "x" << s.mesh.ny() << " cells on ["
       << s.mesh.x_coords().front() << ", " << s.mesh.x_coords().back() << "] x [" << s.mesh.y_coords().front() << ", "
       << s.mesh.y_coords().back() << "], window " << s.spec.window << " s\n";
    for (int i = 0; i < s.dd.size(); ++i) {
        const Subdomain& sd = s.dd.subdomains()[i];
        os << "  subdomain " << i << ": cells [" << sd.box.i0 << "," << sd.box.i1 << ")x[" << sd.box.j0 << ","
           << sd.box.j1 << "), N=" << s.grids[i].slabs() << ", L=" << s.grids[i].substeps()
           << ", tau=" << s.grids[i].step() << ", cfl=" << s.cfl_step[i] << ", Pe_max=" << s.peclet[i] << '\n';
    }
    return os.str();
}

} // namespace stdd
