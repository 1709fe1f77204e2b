#include "hyperq/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hyperq {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + text +
                          "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        size_t pos = 0;
        int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not an integer: '" +
                          text + "'");
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (out.empty()) out.push_back("");
    return out;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& piece : split_commas(text))
        out.push_back(parse_double("list entry", piece));
    return out;
}

cplx parse_complex(const std::string& text) {
    auto pieces = split_commas(text);
    if (pieces.size() == 1)
        return {parse_double("alpha", pieces[0]), 0.0};
    if (pieces.size() == 2)
        return {parse_double("alpha", pieces[0]),
                parse_double("alpha", pieces[1])};
    throw ConfigError("complex value must be 're' or 're,im', got '" + text +
                      "'");
}

PhysicalParams RunConfig::make_params() const {
    PhysicalParams p;
    p.hbar = hbar;
    p.omega = omega;
    p.mu = mu;
    p.validate();
    return p;
}

Wavepacket RunConfig::make_packet() const {
    if (packet == "coherent") return Wavepacket::coherent(parse_complex(alpha));
    if (packet == "lognormal") return Wavepacket::lognormal(a);
    throw ConfigError("packet must be 'coherent' or 'lognormal', got '" +
                      packet + "'");
}

PipelineConfig RunConfig::make_pipeline() const {
    PipelineConfig cfg;
    cfg.spectral_grid.u_min = u_min;
    cfg.spectral_grid.u_max = u_max;
    cfg.spectral_grid.n_points = n_points;
    cfg.pde.grid.u_min = u_min;
    cfg.pde.grid.u_max = u_max;
    cfg.pde.grid.n_points = pde_n_points;
    cfg.pde.dt = dt;
    cfg.tail_tol = tail_tol;
    cfg.spectral_grid.validate();
    cfg.pde.grid.validate();
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (!(tail_tol > 0.0)) throw ConfigError("tail_tol must be > 0");
    return cfg;
}

DivergenceThresholds RunConfig::make_thresholds() const {
    DivergenceThresholds thr;
    thr.converged_rel = converged_rel;
    thr.ratio_floor = ratio_floor;
    thr.monotone_tol = monotone_tol;
    if (!(thr.converged_rel > 0.0) || !(thr.ratio_floor > 1.0) ||
        !(thr.monotone_tol >= 0.0) || !(thr.monotone_tol < 1.0))
        throw ConfigError("divergence thresholds out of range");
    return thr;
}

std::vector<double> RunConfig::scan_grid() const {
    if (t_steps < 2) throw ConfigError("t_steps must be >= 2");
    if (!(t_max > t_min)) throw ConfigError("t_max must exceed t_min");
    std::vector<double> grid(t_steps);
    for (int i = 0; i < t_steps; ++i)
        grid[i] = t_min + (t_max - t_min) * i / (t_steps - 1);
    return grid;
}

nlohmann::ordered_json RunConfig::echo() const {
    nlohmann::ordered_json j;
    j["hbar"] = hbar;
    j["omega"] = omega;
    j["mu"] = mu;
    j["packet"] = packet;
    j["alpha"] = alpha;
    j["a"] = a;
    j["n"] = n;
    j["t"] = t;
    j["route"] = routes;
    j["x0"] = x0;
    j["t_min"] = t_min;
    j["t_max"] = t_max;
    j["t_steps"] = t_steps;
    j["ladder"] = ladder;
    j["converged_rel"] = converged_rel;
    j["ratio_floor"] = ratio_floor;
    j["monotone_tol"] = monotone_tol;
    j["u_min"] = u_min;
    j["u_max"] = u_max;
    j["n_points"] = n_points;
    j["pde_n_points"] = pde_n_points;
    j["dt"] = dt;
    j["tail_tol"] = tail_tol;
    j["ns"] = ns;
    j["quick"] = quick;
    j["out"] = out;
    return j;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config file " + path + ":" +
                              std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config file " + path + ":" +
                              std::to_string(lineno) + ": empty key");
        pairs[key] = value;
    }
    return pairs;
}

void apply_config_pairs(RunConfig& cfg,
                        const std::map<std::string, std::string>& pairs) {
    for (const auto& [key, value] : pairs) {
        if (key == "hbar") cfg.hbar = parse_double(key, value);
        else if (key == "omega") cfg.omega = parse_double(key, value);
        else if (key == "mu") cfg.mu = parse_double(key, value);
        else if (key == "packet") cfg.packet = value;
        else if (key == "alpha") cfg.alpha = value;
        else if (key == "a") cfg.a = parse_double(key, value);
        else if (key == "n") cfg.n = parse_int(key, value);
        else if (key == "t") cfg.t = parse_double_list(value);
        else if (key == "route") cfg.routes = split_commas(value);
        else if (key == "x0") cfg.x0 = parse_double(key, value);
        else if (key == "t_min") cfg.t_min = parse_double(key, value);
        else if (key == "t_max") cfg.t_max = parse_double(key, value);
        else if (key == "t_steps") cfg.t_steps = parse_int(key, value);
        else if (key == "ladder") cfg.ladder = parse_double_list(value);
        else if (key == "converged_rel") cfg.converged_rel = parse_double(key, value);
        else if (key == "ratio_floor") cfg.ratio_floor = parse_double(key, value);
        else if (key == "monotone_tol") cfg.monotone_tol = parse_double(key, value);
        else if (key == "u_min") cfg.u_min = parse_double(key, value);
        else if (key == "u_max") cfg.u_max = parse_double(key, value);
        else if (key == "n_points") cfg.n_points = parse_int(key, value);
        else if (key == "pde_n_points") cfg.pde_n_points = parse_int(key, value);
        else if (key == "dt") cfg.dt = parse_double(key, value);
        else if (key == "tail_tol") cfg.tail_tol = parse_double(key, value);
        else if (key == "ns") cfg.ns = parse_double(key, value);
        else if (key == "quick") cfg.quick = (value == "true" || value == "1");
        else if (key == "out") cfg.out = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

nlohmann::ordered_json RunManifest::to_json(const std::string& timestamp) const {
    nlohmann::ordered_json j;
    j["tool"] = "hyperq";
    j["version"] = tool_version;
    j["command"] = command;
    j["timestamp"] = timestamp;
    j["config"] = config;
    j["summary"] = summary;
    return j;
}

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buf;
}

}  // namespace hyperq
