/**
 * @file scenario.hpp
 * @brief Scenario files: mesh, zones, decomposition, flow, transport data,
 *        time grids and solver settings.
 *
 * Scenarios are YAML documents. A top-level `include: other.yaml` merges the
 * named file first (paths relative to the including file); keys of the
 * including document override included ones, maps merging recursively.
 * All quantities are SI (m, s) unless `units: {time: years}` is given, in
 * which case window lengths, K (m/year) and d (m^2/year) are converted with
 * 1 year = 3.1536e7 s.
 */
#pragma once

#include "stdd/interface_solver.hpp"
#include "stdd/mesh.hpp"
#include "stdd/mixed_fem.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stdd {

inline constexpr double kSecondsPerYear = 3.1536e7;

/// Schema violation; the message starts with the offending key path.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One run of cells along an axis: uniform (`length` split into `cells`) or
/// geometric (`first` width, ratio `growth`, widths increasing toward the
/// axis end when `grow_forward`, toward the start otherwise).
struct AxisSegment {
    int cells = 0;
    double length = 0.0;
    bool graded = false;
    double first = 0.0;
    double growth = 1.0;
    bool grow_forward = true;
};

/// Either a physical box [x0,x1]x[y0,y1] (cells whose centre lies inside) or
/// a cell-index box.
struct Region {
    std::optional<std::array<double, 4>> box;
    std::optional<CellBox> cells;
};

struct ZoneSpec {
    std::string name;
    Region region;
    double porosity = 1.0;
    double diffusion = 0.0; ///< effective d (SI after conversion)
    double conductivity = 0.0;
    std::array<double, 2> velocity{0.0, 0.0};
};

struct SubdomainSpec {
    Region region;
    int steps = 1;
    int substeps = 0; ///< 0: smallest count satisfying the CFL bound
};

enum class VelocitySource : std::uint8_t { zones, darcy };
enum class InitialKind : std::uint8_t { zero, bump, zones };
enum class SourceKind : std::uint8_t { zero, gaussian };

struct ScenarioSpec {
    std::string name;
    std::string notes;
    double time_unit = 1.0; ///< seconds per scenario time unit
    std::array<double, 2> origin{0.0, 0.0};
    std::vector<AxisSegment> x, y;
    std::vector<ZoneSpec> zones;
    std::vector<SubdomainSpec> subdomains;
    VelocitySource velocity_source = VelocitySource::zones;
    std::array<std::optional<double>, 4> head; ///< west, east, south, north
    std::array<EdgeCondition, 4> transport_bc{EdgeCondition::dirichlet, EdgeCondition::dirichlet,
                                              EdgeCondition::dirichlet, EdgeCondition::dirichlet};
    InitialKind initial = InitialKind::zero;
    std::vector<std::string> initial_zones;
    double initial_value = 1.0;
    SourceKind source = SourceKind::zero;
    std::array<double, 2> source_center{0.2, 0.2};
    double source_sharpness = 100.0;
    double window = 1.0; ///< SI seconds
    int windows = 1;
    std::vector<int> snapshot_windows;
    MethodConfig method;
    std::uint64_t seed = 1;
};

/// Parses YAML text. `base_dir` resolves includes. Throws ScenarioError.
ScenarioSpec parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
ScenarioSpec load_scenario_file(const std::filesystem::path& path);

/// Fully built scenario with derived fields.
struct Scenario {
    ScenarioSpec spec;
    StructuredMesh mesh;
    std::vector<int> cell_zone;
    std::vector<double> diffusion, porosity, conductivity;
    std::vector<double> velocity; ///< normal velocity per edge
    std::optional<DarcyField> darcy;
    Decomposition dd;
    std::vector<TimeGrid> grids;
    std::vector<double> cfl_step;   ///< per subdomain
    std::vector<double> peclet;     ///< max local Peclet number |u| h / d per subdomain
    std::vector<double> c0;         ///< global cell averages
    SourceTerm source;

    MultidomainProblem problem() const;
    /// Initial data split over the subdomains.
    WindowData first_window() const;
    /// Global monodomain problem on the given time grid.
    MultidomainProblem monodomain(const TimeGrid& grid) const;
    WindowData monodomain_window() const;
};

/// Validates and builds. Throws ScenarioError (zones not covering the mesh,
/// explicit sub-step counts violating the CFL bound, ...).
Scenario build_scenario(const ScenarioSpec& spec);

/// Scales the cell count of uniform segments and index regions by
/// `space_factor` (results must be integers) and subdomain step counts by
/// `time_factor`, rounded to the nearest integer. Explicit sub-step counts
/// are reset to automatic.
ScenarioSpec refine(const ScenarioSpec& spec, double space_factor, double time_factor);

/// Human-readable summary (mesh, zones, CFL bounds, Peclet numbers).
std::string describe(const Scenario& s);

} // namespace stdd
