#include "hyperq/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "hyperq/evolve/identity.hpp"
#include "hyperq/evolve/propagate.hpp"
#include "hyperq/numerics/special.hpp"
#include "hyperq/observe/growth.hpp"
#include "hyperq/observe/report.hpp"
#include "hyperq/observe/serialize.hpp"

namespace hyperq {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

fs::path prepare_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out);
    fs::create_directories(dir);
    return dir;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << content;
}

void write_manifest(const fs::path& dir, const RunManifest& manifest) {
    write_text_file(dir / "manifest.json",
                    manifest.to_json(iso_utc_now()).dump(2) + "\n");
}

PropagationRoute checked_route(const std::string& name) {
    PropagationRoute r = route_from_name(name);
    if (r == PropagationRoute::free_window)
        throw ConfigError("route '" + name + "' is not a moment route");
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

int cmd_moments(const RunConfig& cfg) {
    const PhysicalParams p = cfg.make_params();
    const Wavepacket w = cfg.make_packet();
    const PipelineConfig pipe = cfg.make_pipeline();
    if (cfg.n < 0) throw ConfigError("n must be >= 0");
    if (cfg.t.empty()) throw ConfigError("at least one t is required");
    if (!(cfg.x0 > 0.0)) throw ConfigError("x0 must be > 0");

    std::vector<double> ts = cfg.t;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    std::vector<PropagationRoute> routes;
    for (const auto& name : cfg.routes) routes.push_back(checked_route(name));

    MomentSeries all;
    std::vector<double> diverged_at;
    for (PropagationRoute route : routes) {
        if (route == PropagationRoute::rotation_form) {
            for (double t : ts) {
                try {
                    all.entries.push_back(moment_rotation(cfg.n, t, w, p));
                } catch (const NonDecayingTail&) {
                    diverged_at.push_back(t);
                }
            }
        } else if (route == PropagationRoute::spectral) {
            for (double t : ts)
                all.entries.push_back(
                    moment_truncated(cfg.n, t, cfg.x0, w, p, route, pipe));
        } else {
            MomentSeries s = moment_series_pde(cfg.n, ts, cfg.x0, w, p, pipe);
            for (auto& e : s.entries) all.entries.push_back(std::move(e));
        }
    }

    const fs::path dir = prepare_out_dir(cfg);
    {
        std::ostringstream csv;
        write_moments_csv(csv, all);
        write_text_file(dir / "moments.csv", csv.str());
    }
    {
        std::vector<SvgSeries> chart;
        const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
        int ci = 0;
        for (PropagationRoute route : routes) {
            SvgSeries s;
            s.label = route_name(route);
            s.color = colors[ci++ % 3];
            for (const auto& m : all.entries)
                if (m.route == route) {
                    s.x.push_back(m.t);
                    s.y.push_back(m.value.value());
                }
            chart.push_back(std::move(s));
        }
        std::ostringstream svg;
        write_svg_chart(svg, "moment vs t", chart);
        write_text_file(dir / "moments.svg", svg.str());
    }

    RunManifest manifest;
    manifest.command = "moments";
    manifest.config = cfg.echo();
    manifest.summary["rows"] = all.entries.size();
    manifest.summary["diverged_at"] = diverged_at;
    write_manifest(dir, manifest);
    return diverged_at.empty() ? exit_ok : exit_divergence;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

int cmd_scan(const RunConfig& cfg) {
    const PhysicalParams p = cfg.make_params();
    const Wavepacket w = cfg.make_packet();
    const ScanResult res = scan_singularities(cfg.scan_grid(), w, p,
                                              cfg.ladder,
                                              cfg.make_thresholds());

    const fs::path dir = prepare_out_dir(cfg);
    {
        std::ostringstream csv;
        write_scan_csv(csv, res.profiles);
        write_text_file(dir / "scan.csv", csv.str());
    }
    json clusters = json::array();
    for (const auto& c : res.clusters) {
        clusters.push_back({{"t_first", c.t_first},
                            {"t_last", c.t_last},
                            {"onset_bracket", {c.onset_lo, c.onset_hi}},
                            {"midpoint", c.midpoint}});
    }
    json cluster_doc;
    cluster_doc["clusters"] = clusters;
    if (p.mu != 0.0) {
        json predicted = json::array();
        for (int l = 0; l < 3; ++l)
            predicted.push_back(singularity_time(SingularityIndex{l}, p));
        cluster_doc["predicted_singular_times"] = predicted;
    }
    write_text_file(dir / "clusters.json", cluster_doc.dump(2) + "\n");
    {
        SvgSeries s;
        s.label = "log10 inter-rung ratio";
        for (const auto& prof : res.profiles) {
            s.x.push_back(prof.t);
            s.y.push_back(prof.log10_growth_ratio);
        }
        std::ostringstream svg;
        write_svg_chart(svg, "divergence-ladder growth vs t", {s});
        write_text_file(dir / "scan.svg", svg.str());
    }

    RunManifest manifest;
    manifest.command = "scan";
    manifest.config = cfg.echo();
    manifest.summary["grid_points"] = res.profiles.size();
    manifest.summary["clusters"] = clusters;
    write_manifest(dir, manifest);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

namespace {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

CheckResult check_norm_coherent(bool quick) {
    std::vector<cplx> alphas{{0.0, 0.0}, {0.5, 0.2}};
    if (!quick) {
        alphas.push_back({0.3, 0.0});
        alphas.push_back({-0.4, 0.7});
    }
    double worst = 0.0;
    for (cplx a : alphas)
        worst = std::max(worst,
                         std::abs(packet_norm(Wavepacket::coherent(a), 1.0) - 1.0));
    return {"normalization-coherent", worst <= 1e-10,
            "max |norm-1| = " + fmt(worst)};
}

CheckResult check_norm_lognormal() {
    const double target = std::sqrt(2.0) / 2.0;
    double worst = 0.0;
    for (double a : {0.7, 1.0})
        worst = std::max(worst, std::abs(packet_norm(Wavepacket::lognormal(a),
                                                     1.0) -
                                         target));
    return {"normalization-lognormal", worst <= 1e-10,
            "max |norm-sqrt2/2| = " + fmt(worst)};
}

CheckResult check_delta_slope(double ns) {
    const EigenNormConstant norm{ns};
    std::vector<double> ls{10.0, 20.0, 40.0, 80.0}, diag;
    for (double l : ls)
        diag.push_back(overlap_window(0.31, 0.31, l, norm).real());
    const LineFit fit = polyfit_line(ls, diag);
    const double expected = 1.0 / pi;
    const double rel = std::abs(fit.slope - expected) / expected;
    return {"delta-sequence-slope", rel <= 0.01,
            "slope = " + fmt(fit.slope) + ", target 1/pi, rel err = " +
                fmt(rel)};
}

CheckResult check_spectral_unitarity() {
    LogGrid g;
    g.n_points = 1 << 12;
    PhysicalParams p;
    p.omega = 0.4;
    ReducedField f = reduce_packet(Wavepacket::coherent({0.0, 0.0}), g, 1.0,
                                   2e-3);
    apply_edge_taper(f);
    const SpectralField q = expand(f);
    const SpectralField qt = propagate_spectral(q, 0.37, p);
    double worst = 0.0;
    for (size_t k = 0; k < q.weights.size(); ++k)
        worst = std::max(worst, std::abs(std::abs(qt.weights[k]) -
                                         std::abs(q.weights[k])));
    return {"spectral-unitarity", worst <= 1e-12,
            "max nodewise ||q_t|-|q|| = " + fmt(worst)};
}

CheckResult check_roundtrip() {
    LogGrid g;
    g.n_points = 1 << 12;
    ReducedField f = reduce_packet(Wavepacket::lognormal(1.0), g, 1.0);
    const ReducedField back = synthesize(expand(f), g);
    double worst = 0.0;
    for (int j = 0; j < g.n_points; ++j)
        worst = std::max(worst, std::abs(back.values[j] - f.values[j]));
    return {"spectral-roundtrip", worst <= 1e-10,
            "max nodewise roundtrip error = " + fmt(worst)};
}

CheckResult check_pde_drift() {
    LogGrid g;
    g.n_points = 1 << 12;
    PhysicalParams p;
    p.omega = 0.2;
    PdeStepperConfig cfg;
    cfg.grid = g;
    cfg.dt = 1e-5;
    ReducedField f = reduce_packet(Wavepacket::lognormal(1.0), g, 1.0);
    apply_edge_taper(f);
    PdeStepper stepper(f, p, cfg);
    stepper.advance_to(1000 * cfg.dt);
    const double drift = stepper.norm_drift();
    return {"pde-norm-drift", drift <= 1e-8,
            "relative drift over 1000 steps = " + fmt(drift)};
}

CheckResult check_fourier_identity(bool quick) {
    struct Case {
        double eps, hmt;
        int sign;
    };
    std::vector<Case> cases;
    if (quick) {
        cases = {{1.0, 0.1, -1}};
    } else {
        for (double eps : {0.0, 1.0, 2.0})
            for (double hmt : {0.05, 0.1})
                for (int sign : {-1, +1}) cases.push_back({eps, hmt, sign});
    }
    double worst = 0.0;
    for (const Case& c : cases)
        worst = std::max(worst,
                         hs_identity_residual(c.eps, 4.0 * c.hmt, c.sign));
    return {"fourier-identity", worst <= 1e-8,
            "max residual = " + fmt(worst)};
}

CheckResult check_route_equivalence(bool quick) {
    PhysicalParams p;
    const Wavepacket w = Wavepacket::coherent({0.0, 0.0});
    PipelineConfig pipe;
    pipe.pde.dt = 1e-5;
    const double t = 0.02, x0 = 1e4;
    const double rot = moment_rotation(2, t, w, p).value.value();
    const double spec =
        moment_truncated(2, t, x0, w, p, PropagationRoute::spectral, pipe)
            .value.value();
    double worst = std::abs(rot - spec) / rot;
    if (!quick) {
        const double fd =
            moment_truncated(2, t, x0, w, p, PropagationRoute::pde_oracle, pipe)
                .value.value();
        worst = std::max(worst, std::abs(rot - fd) / rot);
    }
    return {"route-equivalence", worst <= 1e-5,
            "max pairwise rel diff at t=0.02: " + fmt(worst)};
}

CheckResult check_moment_oracle() {
    PhysicalParams p;
    const Wavepacket w = Wavepacket::lognormal(1.0);
    double worst = 0.0;
    for (int n : {0, 2}) {
        const double numeric = moment_rotation(n, 0.1, w, p).value.value();
        const double oracle = lognormal_moment_oracle(n, 0.1, 1.0, p);
        worst = std::max(worst, std::abs(numeric - oracle) / oracle);
    }
    return {"moment-closed-form-oracle", worst <= 1e-8,
            "max rel err vs closed form = " + fmt(worst)};
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
    std::vector<CheckResult> checks;
    checks.push_back(check_norm_coherent(cfg.quick));
    checks.push_back(check_norm_lognormal());
    checks.push_back(check_delta_slope(cfg.ns));
    checks.push_back(check_spectral_unitarity());
    checks.push_back(check_roundtrip());
    checks.push_back(check_pde_drift());
    checks.push_back(check_fourier_identity(cfg.quick));
    checks.push_back(check_route_equivalence(cfg.quick));
    if (!cfg.quick) checks.push_back(check_moment_oracle());

    bool all = true;
    json rows = json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        rows.push_back(
            {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    json doc;
    doc["mode"] = cfg.quick ? "quick" : "full";
    doc["checks"] = rows;
    doc["all_passed"] = all;

    const fs::path dir = prepare_out_dir(cfg);
    write_text_file(dir / "verify.json", doc.dump(2) + "\n");

    RunManifest manifest;
    manifest.command = "verify";
    manifest.config = cfg.echo();
    manifest.summary["all_passed"] = all;
    manifest.summary["checks"] = rows;
    write_manifest(dir, manifest);
    return all ? exit_ok : exit_invariant;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const RunConfig& cfg) {
    // The report is a fixed canonical battery (every section chosen so its
    // printed/oracle/numeric rows are meaningful); only the destination is
    // configurable.
    const json rep = comparison_report(ReportConfig{});

    const fs::path dir = prepare_out_dir(cfg);
    write_text_file(dir / "report.json", rep.dump(2) + "\n");
    write_text_file(dir / "report.txt", render_report_text(rep));

    RunManifest manifest;
    manifest.command = "report";
    manifest.config = cfg.echo();
    json names = json::array();
    for (auto it = rep["sections"].begin(); it != rep["sections"].end(); ++it)
        names.push_back(it.key());
    manifest.summary["sections"] = names;
    write_manifest(dir, manifest);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// front end
// ---------------------------------------------------------------------------

namespace {

// The config file must be loaded before flag parsing so that flags win;
// fish its path out of the raw arguments first.
std::string prescan_config_path(const std::vector<std::string>& args) {
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw ConfigError("--config requires a path");
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0)
            return args[i].substr(std::string("--config=").size());
    }
    return "";
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (double x : v) {
        if (!out.empty()) out += ',';
        out += format_sci(x);
    }
    return out;
}

std::string join_strings(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += ',';
        out += s;
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    RunConfig cfg;
    try {
        const std::string config_path = prescan_config_path(args);
        if (!config_path.empty())
            apply_config_pairs(cfg, read_config_file(config_path));
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    }

    CLI::App app{"quantum saddle-point moment laboratory"};
    app.require_subcommand(1);

    std::string config_path_sink;  // consumed by the prescan above
    std::string t_str = join_doubles(cfg.t);
    std::string ladder_str = join_doubles(cfg.ladder);
    std::string route_str = join_strings(cfg.routes);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path_sink, "key=value config file");
        sub->add_option("--hbar", cfg.hbar, "Planck constant");
        sub->add_option("--omega", cfg.omega, "linear dilation rate");
        sub->add_option("--mu", cfg.mu, "quadratic dispersion strength");
        sub->add_option("--packet", cfg.packet, "coherent | lognormal");
        sub->add_option("--alpha", cfg.alpha, "coherent amplitude ('re' or 're,im')");
        sub->add_option("--a", cfg.a, "log-normal width");
        sub->add_option("--u-min", cfg.u_min, "grid lower edge (u = ln(x/sqrt(hbar)))");
        sub->add_option("--u-max", cfg.u_max, "grid upper edge");
        sub->add_option("--n-points", cfg.n_points, "spectral grid nodes (power of two)");
        sub->add_option("--pde-n-points", cfg.pde_n_points, "finite-difference grid nodes");
        sub->add_option("--dt", cfg.dt, "finite-difference time step");
        sub->add_option("--tail-tol", cfg.tail_tol, "grid containment gate");
        sub->add_option("--out", cfg.out, "output directory");
    };

    CLI::App* moments = app.add_subcommand("moments", "moment series along t");
    add_common(moments);
    moments->add_option("--n", cfg.n, "moment order");
    moments->add_option("--t", t_str, "comma-separated times");
    moments->add_option("--route", route_str,
                        "comma-separated: rotation,spectral,pde");
    moments->add_option("--x0", cfg.x0, "truncation radius for grid routes");

    CLI::App* scan = app.add_subcommand("scan", "divergence scan over t");
    add_common(scan);
    scan->add_option("--t-min", cfg.t_min, "scan start");
    scan->add_option("--t-max", cfg.t_max, "scan end");
    scan->add_option("--t-steps", cfg.t_steps, "scan grid points");
    scan->add_option("--ladder", ladder_str, "comma-separated x0 ladder");
    scan->add_option("--converged-rel", cfg.converged_rel,
                     "converged verdict threshold");
    scan->add_option("--ratio-floor", cfg.ratio_floor,
                     "diverging verdict ratio floor");
    scan->add_option("--monotone-tol", cfg.monotone_tol,
                     "ratio monotonicity slack");

    CLI::App* verify = app.add_subcommand("verify", "invariant check suite");
    add_common(verify);
    verify->add_flag("--quick", cfg.quick, "fast subset (< 10 s)");
    verify->add_option("--ns", cfg.ns,
                       "eigenbasis normalization constant (falsifiability knob)");

    CLI::App* report = app.add_subcommand("report",
                                          "printed-vs-oracle comparison");
    add_common(report);

    std::vector<std::string> argv_store;
    argv_store.push_back("hyperq");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(argv_store.size());
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    try {
        cfg.t = parse_double_list(t_str);
        cfg.ladder = parse_double_list(ladder_str);
        cfg.routes.clear();
        std::string piece;
        std::stringstream ss(route_str);
        while (std::getline(ss, piece, ',')) cfg.routes.push_back(piece);

        if (const char* env = std::getenv("HYPERQ_OUT"); env && *env)
            cfg.out = env;

        if (app.got_subcommand(moments)) return cmd_moments(cfg);
        if (app.got_subcommand(scan)) return cmd_scan(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        return cmd_report(cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_config;
    } catch (const NonDecayingTail& e) {
        std::fprintf(stderr, "divergence: %s\n", e.what());
        return exit_divergence;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "failure: %s\n", e.what());
        return exit_invariant;
    }
}

}  // namespace hyperq
