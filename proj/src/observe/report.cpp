#include "hyperq/observe/report.hpp"

#include <cmath>
#include <sstream>

#include "hyperq/numerics/special.hpp"
#include "hyperq/observe/closed_form.hpp"
#include "hyperq/observe/divergence.hpp"
#include "hyperq/observe/growth.hpp"
#include "hyperq/spectral/field.hpp"

namespace hyperq {

namespace {

using json = nlohmann::ordered_json;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

json cplx_json(cplx z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

// ---- growth-law section ---------------------------------------------------

json growth_section(const ReportConfig& cfg) {
    PhysicalParams p;
    p.hbar = 1.0;
    p.mu = 1.0;
    p.omega = 0.3;
    const Wavepacket w = Wavepacket::lognormal(cfg.a);

    json sec;
    sec["config"] = {{"packet", "lognormal"},
                     {"a", cfg.a},
                     {"hbar", p.hbar},
                     {"omega", p.omega},
                     {"mu", p.mu},
                     {"t_max", cfg.growth_t_max},
                     {"points", cfg.growth_points}};
    sec["note"] =
        "ln<x^n(t)> fitted to c0 + c1 t + c2 t^2; printed law claims "
        "c1 = 4*omega for every n and c2 = 16 (hbar mu / a)^2; the "
        "closed-integral oracle gives c1 = 2 n omega and c2 = 32 "
        "(hbar mu / a)^2. Numeric column arbitrates.";

    json rows = json::array();
    for (int n : {1, 2}) {
        MomentSeries series;
        for (int i = 0; i < cfg.growth_points; ++i) {
            const double t = cfg.growth_t_max * i / (cfg.growth_points - 1);
            series.entries.push_back(moment_rotation(n, t, w, p));
        }
        const GrowthFit fit = fit_growth(series);
        const double c1_printed = 4.0 * p.omega;
        const double c1_oracle = 2.0 * n * p.omega;
        const double c2_printed = 16.0 / (cfg.a * cfg.a);
        const double c2_oracle = 32.0 / (cfg.a * cfg.a);
        json row;
        row["n"] = n;
        row["c1"] = {{"printed", c1_printed},
                     {"oracle", c1_oracle},
                     {"numeric", fit.c1},
                     {"rel_diff_numeric_vs_printed", rel_diff(fit.c1, c1_printed)},
                     {"rel_diff_numeric_vs_oracle", rel_diff(fit.c1, c1_oracle)}};
        row["c2"] = {{"printed", c2_printed},
                     {"oracle", c2_oracle},
                     {"numeric", fit.c2},
                     {"rel_diff_numeric_vs_printed", rel_diff(fit.c2, c2_printed)},
                     {"rel_diff_numeric_vs_oracle", rel_diff(fit.c2, c2_oracle)}};
        row["fit_residual_rms"] = fit.residual;
        rows.push_back(row);
    }
    sec["time_fits"] = rows;

    // Coefficient of n^2 at t = 0 (ln of the initial n-th moment is
    // quadratic in n): printed a^4 vs oracle a^2/2.
    {
        std::vector<double> ns, lnv;
        for (int n = 0; n <= 4; ++n) {
            MomentValue m = moment_rotation(n, 0.0, w, p);
            ns.push_back(n);
            lnv.push_back(std::log(m.value.value()));
        }
        QuadraticFit q = polyfit_quadratic(ns, lnv);
        const double printed = std::pow(cfg.a, 4);
        const double oracle = 0.5 * cfg.a * cfg.a;
        sec["n_squared_coefficient"] = {
            {"printed", printed},
            {"oracle", oracle},
            {"numeric", q.c2},
            {"rel_diff_numeric_vs_printed", rel_diff(q.c2, printed)},
            {"rel_diff_numeric_vs_oracle", rel_diff(q.c2, oracle)}};
    }
    return sec;
}

// ---- closed-form snapshot section ------------------------------------------

json closed_form_section(const ReportConfig& cfg) {
    PhysicalParams p;  // hbar = 1, omega = 0, mu = 1
    json sec;
    sec["config"] = {{"alpha", cplx_json(cfg.alpha)},
                     {"x0", cfg.x0_closed},
                     {"hbar", p.hbar},
                     {"omega", p.omega},
                     {"mu", p.mu}};
    sec["note"] =
        "Bracket of the published snapshot at the l-th singular time vs the "
        "exact antiderivative of the same integral. Printed signs are "
        "(+,-,-) on the (sinh-cubic, cosh-quadratic, x0^2 sinh) terms; the "
        "antiderivative gives (+,-,+). Magnitudes must agree term by term.";
    json rows = json::array();
    for (int l : cfg.l_list) {
        ClosedFormTerms t = closed_form_terms(l, cfg.alpha, cfg.x0_closed, p);
        json row;
        row["l"] = l;
        row["xi"] = cplx_json(t.xi);
        row["degenerate"] = t.xi_degenerate;
        row["terms"] = json::array();
        const struct {
            const char* name;
            cplx value;
            int printed_sign;
            int oracle_sign;
        } defs[] = {
            {"sinh_cubic", t.term_sinh_cubic, +1, +1},
            {"cosh_quadratic", t.term_cosh_quad, -1, -1},
            {"sinh_x0_squared", t.term_sinh_x0sq, -1, +1},
        };
        for (const auto& d : defs) {
            row["terms"].push_back(
                {{"term", d.name},
                 {"magnitude", std::abs(d.value)},
                 {"printed_sign", d.printed_sign},
                 {"oracle_sign", d.oracle_sign},
                 {"signs_agree", d.printed_sign == d.oracle_sign}});
        }
        row["printed_bracket"] = cplx_json(t.printed_bracket);
        row["oracle_bracket"] = cplx_json(t.oracle_bracket);
        row["bracket_rel_diff"] =
            std::abs(t.printed_bracket - t.oracle_bracket) /
            std::abs(t.oracle_bracket);
        row["printed_total"] = cplx_json(t.printed_total);
        rows.push_back(row);
    }
    sec["snapshots"] = rows;
    return sec;
}

// ---- singularity-scan section ----------------------------------------------

json scan_section() {
    PhysicalParams p;
    p.omega = 0.0;
    const Wavepacket w = Wavepacket::coherent({0.0, 0.0});
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(0.002 * i);
    const std::vector<double> ladder{4.0, 8.0, 16.0, 32.0};
    ScanResult res = scan_singularities(grid, w, p, ladder);

    json sec;
    sec["config"] = {{"packet", "coherent"},
                     {"alpha", cplx_json({0.0, 0.0})},
                     {"hbar", p.hbar},
                     {"omega", p.omega},
                     {"mu", p.mu},
                     {"t_grid", "[0, 0.12] step 0.002"},
                     {"ladder", ladder}};
    const double t0 = singularity_time(SingularityIndex{0}, p);
    sec["predicted_first_singular_time"] = t0;
    json clusters = json::array();
    for (const auto& c : res.clusters) {
        clusters.push_back({{"t_first", c.t_first},
                            {"t_last", c.t_last},
                            {"onset_bracket", {c.onset_lo, c.onset_hi}},
                            {"midpoint", c.midpoint},
                            {"midpoint_rel_error_vs_prediction",
                             rel_diff(c.midpoint, t0)}});
    }
    sec["clusters"] = clusters;
    return sec;
}

// ---- route-equivalence section ----------------------------------------------

json route_section(const ReportConfig& cfg) {
    PhysicalParams p;  // hbar = 1, omega = 0, mu = 1
    const Wavepacket w = Wavepacket::coherent({0.0, 0.0});
    PipelineConfig pipe;
    pipe.pde.dt = cfg.pde_dt;
    const std::vector<double> ts{0.01, 0.02, pi / 64.0};
    const double x0 = 1e4;  // effectively untruncated for this packet

    MomentSeries pde = moment_series_pde(2, ts, x0, w, p, pipe);

    json sec;
    sec["config"] = {{"packet", "coherent"},
                     {"alpha", cplx_json({0.0, 0.0})},
                     {"hbar", p.hbar},
                     {"omega", p.omega},
                     {"mu", p.mu},
                     {"pde_dt", cfg.pde_dt},
                     {"x0", x0}};
    sec["note"] =
        "Second moment by rotation-form quadrature, spectral pipeline and "
        "finite-difference oracle, against the closed form "
        "(1/2) cos(16 t)^(-3/2).";
    json rows = json::array();
    double worst = 0.0;
    for (size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const double rot = moment_rotation(2, t, w, p).value.value();
        const double spec =
            moment_truncated(2, t, x0, w, p, PropagationRoute::spectral, pipe)
                .value.value();
        const double fd = pde.entries[i].value.value();
        const double closed =
            0.5 * std::pow(std::cos(16.0 * t), -1.5);
        json row;
        row["t"] = t;
        row["rotation"] = rot;
        row["spectral"] = spec;
        row["pde"] = fd;
        row["closed_form_oracle"] = closed;
        row["max_pairwise_rel_diff"] =
            std::max({rel_diff(rot, spec), rel_diff(rot, fd),
                      rel_diff(spec, fd)});
        row["rel_diff_vs_closed"] = rel_diff(rot, closed);
        worst = std::max(worst, row["max_pairwise_rel_diff"].get<double>());
        rows.push_back(row);
    }
    sec["rows"] = rows;
    sec["max_pairwise_rel_diff"] = worst;
    return sec;
}

// ---- truncation-systematic section -------------------------------------------

json truncation_section(const ReportConfig& cfg) {
    PhysicalParams p;  // hbar = 1, omega = 0, mu = 1
    const Wavepacket w = Wavepacket::coherent({0.0, 0.0});
    PipelineConfig pipe;
    pipe.pde.dt = cfg.pde_dt;
    const double t = 0.04, x0 = 4.0;
    const double rot =
        moment_truncated(2, t, x0, w, p, PropagationRoute::rotation_form, pipe)
            .value.value();
    const double spec =
        moment_truncated(2, t, x0, w, p, PropagationRoute::spectral, pipe)
            .value.value();
    json sec;
    sec["config"] = {{"packet", "coherent alpha=0"}, {"t", t}, {"x0", x0}};
    sec["note"] =
        "The rotation route truncates the rotated initial coordinate at "
        "y0 = x0 e^{-2 omega t} (canonical); the grid routes truncate the "
        "evolved coordinate at ln(x0/sqrt(hbar)). The difference below is "
        "that geometric systematic, not a numerical error; it vanishes as "
        "x0 grows.";
    sec["rotation_truncation"] = rot;
    sec["u_window_truncation"] = spec;
    sec["rel_difference"] = rel_diff(rot, spec);
    return sec;
}

// ---- spectral-weight width audit ---------------------------------------------

json width_audit_section(const ReportConfig& cfg) {
    const double a = cfg.audit_a;
    const Wavepacket w = Wavepacket::lognormal(a);
    LogGrid g;
    g.u_min = -24.0;
    g.u_max = 24.0;
    g.n_points = 1 << 12;
    SpectralField q = expand(reduce_packet(w, g, 1.0));
    double m0 = 0.0, m2 = 0.0;
    for (size_t k = 0; k < q.weights.size(); ++k) {
        const double eps = q.eps(static_cast<int>(k));
        const double dens = std::norm(q.weights[k]);
        m0 += dens;
        m2 += eps * eps * dens;
    }
    const double measured = m2 / m0;
    const double printed = 1.0 / (4.0 * a);      // weight exp(-a eps^2)
    const double derived = 1.0 / (4.0 * a * a);  // weight exp(-a^2 eps^2)
    json sec;
    sec["config"] = {{"packet", "lognormal"}, {"a", a}};
    sec["note"] =
        "Variance of |q(eps)|^2 for the log-packet. The published spectral "
        "weight exp(-a eps^2) predicts 1/(4a); the weight consistent with "
        "the published packet (Gaussian of ln|x| with variance 2a^2) is "
        "exp(-a^2 eps^2), predicting 1/(4a^2). The two coincide at a = 1, "
        "so the audit runs at a != 1.";
    sec["measured_variance"] = measured;
    sec["printed_prediction"] = printed;
    sec["derived_prediction"] = derived;
    sec["rel_diff_vs_printed"] = rel_diff(measured, printed);
    sec["rel_diff_vs_derived"] = rel_diff(measured, derived);
    return sec;
}

}  // namespace

json comparison_report(const ReportConfig& cfg) {
    json rep;
    rep["document"] = "printed-vs-oracle comparison report";
    rep["conventions"] = json::array(
        {"Moments use the rotation-route growth factor e^{2 n omega t}; the "
         "published law keeps e^{4 omega t} for every n. Both appear in the "
         "growth section; the numeric fit arbitrates.",
         "Eigenbasis normalization constant pinned to 4*pi across both half "
         "lines (2*pi per decoupled side); verified by the delta-sequence "
         "slope check in the verify command.",
         "Truncated moments: rotation-route truncation of the rotated "
         "coordinate is canonical; the u-window truncation of the grid "
         "routes is the cross-check (see truncation_systematic).",
         "The Fourier/Fresnel identity holds only with the square root "
         "branch tied to the sign of the quadratic phase; decoupling the "
         "signs leaves a constant residual of sqrt(2) (identity section of "
         "the verify command)."});
    rep["sections"] = json::object();
    rep["sections"]["growth_law"] = growth_section(cfg);
    rep["sections"]["closed_form_snapshot"] = closed_form_section(cfg);
    rep["sections"]["spectral_weight_width"] = width_audit_section(cfg);
    rep["sections"]["singularity_scan"] = scan_section();
    if (cfg.with_route_section) {
        rep["sections"]["route_equivalence"] = route_section(cfg);
        rep["sections"]["truncation_systematic"] = truncation_section(cfg);
    }
    return rep;
}

namespace {

void render_value(std::ostringstream& os, const json& v) {
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.10g", v.get<double>());
        os << buf;
    } else if (v.is_string()) {
        os << v.get<std::string>();
    } else {
        os << v.dump();
    }
}

void render(std::ostringstream& os, const json& node, int depth) {
    const std::string pad(2 * depth, ' ');
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                os << pad << it.key() << ":\n";
                render(os, it.value(), depth + 1);
            } else {
                os << pad << it.key() << ": ";
                render_value(os, it.value());
                os << '\n';
            }
        }
    } else if (node.is_array()) {
        int idx = 0;
        for (const auto& item : node) {
            if (item.is_object() || item.is_array()) {
                os << pad << "- [" << idx << "]\n";
                render(os, item, depth + 1);
            } else {
                os << pad << "- ";
                render_value(os, item);
                os << '\n';
            }
            ++idx;
        }
    } else {
        os << pad;
        render_value(os, node);
        os << '\n';
    }
}

}  // namespace

std::string render_report_text(const json& rep) {
    std::ostringstream os;
    os << "================================================================\n";
    os << " " << rep.value("document", std::string("report")) << "\n";
    os << "================================================================\n";
    render(os, rep, 0);
    return os.str();
}

}  // namespace hyperq
