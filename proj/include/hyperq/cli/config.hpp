#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "hyperq/model/packet.hpp"
#include "hyperq/model/params.hpp"
#include "hyperq/observe/divergence.hpp"
#include "hyperq/observe/moments.hpp"

namespace hyperq {

inline constexpr const char* tool_version = "1.0.0";

// Fully resolved run configuration. Sources, in increasing precedence:
// built-in defaults < key=value config file < same-named CLI flags. The
// output directory additionally honors the HYPERQ_OUT environment variable
// (it overrides all other sources; batch runners own the placement).
struct RunConfig {
    // physics
    double hbar = 1.0;
    double omega = 0.0;
    double mu = 1.0;

    // packet
    std::string packet = "coherent";  // coherent | lognormal
    std::string alpha = "0";          // "re" or "re,im"
    double a = 1.0;

    // moments command
    int n = 2;
    std::vector<double> t{0.01};
    std::vector<std::string> routes{"rotation"};
    double x0 = 1e6;  // truncation radius for the grid routes

    // scan command
    double t_min = 0.0;
    double t_max = 0.12;
    int t_steps = 61;  // number of grid points
    std::vector<double> ladder{4.0, 8.0, 16.0, 32.0};
    double converged_rel = 1e-6;
    double ratio_floor = 4.0;
    double monotone_tol = 0.05;

    // grids / stepper
    double u_min = -16.0;
    double u_max = 16.0;
    int n_points = 1 << 14;
    int pde_n_points = 1 << 15;
    double dt = 2e-6;
    double tail_tol = 2e-3;

    // verify command
    double ns = 4.0 * pi;  // eigenbasis normalization (falsifiability knob)
    bool quick = false;

    std::string out = "out";

    PhysicalParams make_params() const;
    Wavepacket make_packet() const;
    PipelineConfig make_pipeline() const;
    DivergenceThresholds make_thresholds() const;
    std::vector<double> scan_grid() const;

    // Every key with its resolved value, for the manifest.
    nlohmann::ordered_json echo() const;
};

// key=value lines, '#' comments, blank lines allowed; unknown keys are
// errors (typo safety). Returns the raw pairs.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Apply file pairs onto a config (used before flag parsing so flags win).
void apply_config_pairs(RunConfig& cfg,
                        const std::map<std::string, std::string>& pairs);

std::vector<double> parse_double_list(const std::string& text);
cplx parse_complex(const std::string& text);

// Manifest written once per run directory.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config;
    nlohmann::ordered_json summary;

    // `timestamp` carries wall-clock and is the one field determinism
    // comparisons must exclude.
    nlohmann::ordered_json to_json(const std::string& timestamp) const;
};

std::string iso_utc_now();

}  // namespace hyperq
