#pragma once

#include "stdd/scenario.hpp"

#include <sstream>
#include <string>

namespace stdd::testing {

struct SmallOptions {
    int nx = 12, ny = 8;
    double d_left = 0.02, d_right = 0.02;
    double ux = 0.5, uy = 1.0;
    int steps_left = 10, steps_right = 10;
    bool quad = false; // 2x2 boxes instead of a left/right split
    bool bump = true;
    bool source = true;
    std::string method = "oswr-gmres";
    double tol = 1e-11;
};

// Scaled-down copy of the unit-square test case.
inline std::string small_yaml(const SmallOptions& o) {
    std::ostringstream s;
    s << "name: small\n"
      << "mesh: {x: [{length: 1.0, cells: " << o.nx << "}], y: [{length: 1.0, cells: " << o.ny << "}]}\n"
      << "zones:\n"
      << "  - {name: left, box: [0, 0.5, 0, 1], porosity: 1, diffusion: " << o.d_left << ", velocity: [" << o.ux
      << ", " << o.uy << "]}\n"
      << "  - {name: right, box: [0.5, 1, 0, 1], porosity: 1, diffusion: " << o.d_right << ", velocity: [" << o.ux
      << ", " << o.uy << "]}\n";
    if (o.quad) {
        s << "subdomains:\n"
          << "  - {box: [0, 0.5, 0, 0.5], steps: " << o.steps_left << "}\n"
          << "  - {box: [0.5, 1, 0, 0.5], steps: " << o.steps_right << "}\n"
          << "  - {box: [0, 0.5, 0.5, 1], steps: " << o.steps_left << "}\n"
          << "  - {box: [0.5, 1, 0.5, 1], steps: " << o.steps_right << "}\n";
    } else {
        s << "subdomains:\n"
          << "  - {box: [0, 0.5, 0, 1], steps: " << o.steps_left << "}\n"
          << "  - {box: [0.5, 1, 0, 1], steps: " << o.steps_right << "}\n";
    }
    s << "initial_condition: {type: " << (o.bump ? "bump" : "zero") << "}\n"
      << "source: {type: " << (o.source ? "gaussian, center: [0.2, 0.2], sharpness: 100" : "zero") << "}\n"
      << "time: {window: 1.0}\n"
      << "method: {name: " << o.method << ", tol: " << o.tol << ", max_iter: 400}\n"
      << "seed: 5\n";
    return s.str();
}

inline Scenario small_scenario(const SmallOptions& o = {}) { return build_scenario(parse_scenario(small_yaml(o))); }

} // namespace stdd::testing
