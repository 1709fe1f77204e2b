#include "hyperq/observe/moments.hpp"

#include <algorithm>
#include <cmath>

#include "hyperq/evolve/free_window.hpp"
#include "hyperq/evolve/propagate.hpp"
#include "hyperq/numerics/quadrature.hpp"

namespace hyperq {

const char* route_name(PropagationRoute r) {
    switch (r) {
        case PropagationRoute::rotation_form: return "rotation";
        case PropagationRoute::spectral: return "spectral";
        case PropagationRoute::pde_oracle: return "pde";
        case PropagationRoute::free_window: return "free-window";
    }
    return "?";
}

PropagationRoute route_from_name(const std::string& name) {
    if (name == "rotation") return PropagationRoute::rotation_form;
    if (name == "spectral") return PropagationRoute::spectral;
    if (name == "pde") return PropagationRoute::pde_oracle;
    if (name == "free-window") return PropagationRoute::free_window;
    throw ConfigError("unknown route '" + name + "'");
}

std::string MomentValue::flags_joined() const {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

namespace {

constexpr double ln10 = 2.302585092994045684;

bool packet_is_even(const Wavepacket& w) {
    return w.family == Wavepacket::Family::lognormal ||
           w.alpha == cplx{0.0, 0.0};
}

// log |y^n rotated_pair| along u = ln y, scanned coarsely to find the peak
// and a scale factor that keeps the actual quadrature in a safe range.
struct ScanInfo {
    double log_peak = -HUGE_VAL;  // natural log of |integrand| at peak
    double u_peak = 0.0;
    bool all_zero = true;
};

ScanInfo coarse_scan(int n, double t, const Wavepacket& w,
                     const PhysicalParams& p, double u_lo, double u_hi) {
    ScanInfo info;
    const int samples = 1024;
    for (int i = 0; i <= samples; ++i) {
        double u = u_lo + (u_hi - u_lo) * i / samples;
        double mag = std::abs(rotated_pair(w, t, std::exp(u), p));
        if (mag == 0.0) continue;
        double lg = (n + 1.0) * u + std::log(mag);
        info.all_zero = false;
        if (lg > info.log_peak) {
            info.log_peak = lg;
            info.u_peak = u;
        }
    }
    return info;
}

MomentValue finalize_rotation(int n, double t, const PhysicalParams& p,
                              PropagationRoute route, cplx integral,
                              double quad_err, double log_scale) {
    // moment = 2 e^{2 n omega t} * e^{log_scale} * integral
    MomentValue m;
    m.t = t;
    m.n = n;
    m.route = route;
    double shift10 = (log_scale + 2.0 * n * p.omega * t) / ln10;
    m.value = ScaledReal::from_scaled(2.0 * integral.real(), shift10);
    // The pair integrand is |Psi(y e^{-i theta})|^2, exactly real; any
    // imaginary residue is roundoff and goes into the error bar.
    double err_mantissa = 2.0 * (quad_err + std::abs(integral.imag()));
    m.err = ScaledReal::from_scaled(err_mantissa, shift10).value();
    if (std::abs(m.value.log10_mag) >= 300.0 && !m.value.zero())
        m.flags.push_back("scaled");
    return m;
}

}  // namespace

MomentValue moment_rotation(int n, double t, const Wavepacket& w,
                            const PhysicalParams& p) {
    if (n < 0) throw ConfigError("moment order n must be >= 0");
    p.validate();
    ScanInfo scan = coarse_scan(n, t, w, p, -40.0, 40.0);
    if (scan.all_zero) {
        MomentValue m;
        m.t = t;
        m.n = n;
        return m;
    }
    const double s = scan.log_peak;
    auto f = [&](double u) -> cplx {
        cplx pair = rotated_pair(w, t, std::exp(u), p);
        return std::exp((n + 1.0) * u - s) * pair;
    };
    TailOptions opt;
    opt.rel_tol = 1e-11;
    LineResult r = integrate_line_expanding(f, scan.u_peak, 1.0, opt);
    return finalize_rotation(n, t, p, PropagationRoute::rotation_form, r.value,
                             r.err, s);
}

namespace {

MomentValue truncated_rotation(int n, double t, double x0, const Wavepacket& w,
                               const PhysicalParams& p) {
    const double y0 = x0 * std::exp(-2.0 * p.omega * t);
    const double u_hi = std::log(y0);
    const double u_lo = u_hi - 50.0;  // e^{(n+1) du} leaves nothing below this
    ScanInfo scan = coarse_scan(n, t, w, p, u_lo, u_hi);
    MomentValue m;
    if (scan.all_zero) {
        m.t = t;
        m.n = n;
        m.flags.push_back("truncated");
        return m;
    }
    const double s = scan.log_peak;
    auto f = [&](double u) -> cplx {
        cplx pair = rotated_pair(w, t, std::exp(u), p);
        return std::exp((n + 1.0) * u - s) * pair;
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    QuadratureResult r = integrate_adaptive(f, u_lo, u_hi, opt);
    m = finalize_rotation(n, t, p, PropagationRoute::rotation_form, r.value,
                          r.err, s);
    m.flags.push_back("truncated");
    return m;
}

struct GridMomentAccum {
    double value = 0.0;
    double edge_sample = 0.0;  // last included summand, a tail-size proxy
};

GridMomentAccum weighted_sum(const ReducedField& f, int n, double u_cut) {
    const LogGrid& g = f.grid;
    const double du = g.du();
    GridMomentAccum acc;
    for (int j = 0; j < g.n_points; ++j) {
        double u = g.u(j);
        if (u > u_cut) break;
        double term = std::exp(n * u) * std::norm(f.values[j]) * du;
        acc.value += term;
        acc.edge_sample = term;
    }
    return acc;
}

// One half-line contribution of the grid pipelines.
GridMomentAccum grid_moment_side(int n, double t, double u_cut,
                                 const Wavepacket& w, const PhysicalParams& p,
                                 PropagationRoute route,
                                 const PipelineConfig& cfg, LogGrid::Side side) {
    LogGrid g = (route == PropagationRoute::pde_oracle) ? cfg.pde.grid
                                                        : cfg.spectral_grid;
    g.side = side;
    ReducedField f0 = reduce_packet(w, g, p.hbar, cfg.tail_tol);
    apply_edge_taper(f0, cfg.taper_width, cfg.taper_margin);
    ReducedField ft;
    if (route == PropagationRoute::spectral) {
        ft = synthesize(propagate_spectral(expand(f0), t, p), g);
    } else {
        PdeStepperConfig pcfg = cfg.pde;
        pcfg.grid = g;
        ft = pde_evolve(f0, t, p, pcfg);
    }
    return weighted_sum(ft, n, u_cut);
}

MomentValue truncated_grid(int n, double t, double x0, const Wavepacket& w,
                           const PhysicalParams& p, PropagationRoute route,
                           const PipelineConfig& cfg) {
    const LogGrid& base = (route == PropagationRoute::pde_oracle)
                              ? cfg.pde.grid
                              : cfg.spectral_grid;
    base.validate();
    const double u_request = std::log(x0 / std::sqrt(p.hbar));
    const double u_cap = base.u_max - cfg.cut_margin;
    const double u_cut = std::min(u_request, u_cap);

    GridMomentAccum acc =
        grid_moment_side(n, t, u_cut, w, p, route, cfg, LogGrid::Side::positive);
    double total, edge;
    if (packet_is_even(w)) {
        total = 2.0 * acc.value;
        edge = 2.0 * acc.edge_sample;
    } else {
        GridMomentAccum neg = grid_moment_side(n, t, u_cut, w, p, route, cfg,
                                               LogGrid::Side::negative);
        total = acc.value + neg.value;
        edge = acc.edge_sample + neg.edge_sample;
    }
    total *= std::pow(p.hbar, 0.5 * n);
    edge *= std::pow(p.hbar, 0.5 * n);

    MomentValue m;
    m.t = t;
    m.n = n;
    m.route = route;
    m.value = ScaledReal::from_double(total);
    // Honest-but-cheap estimate: the boundary summand bounds what the cut
    // is hiding locally; the floor covers transform roundoff.
    m.err = edge + 1e-13 * std::abs(total);
    m.flags.push_back("truncated");
    if (u_request > u_cap) m.flags.push_back("cut-at-grid-margin");
    return m;
}

}  // namespace

MomentValue moment_truncated(int n, double t, double x0, const Wavepacket& w,
                             const PhysicalParams& p, PropagationRoute route,
                             const PipelineConfig& cfg) {
    if (n < 0) throw ConfigError("moment order n must be >= 0");
    if (!(x0 > 0.0)) throw ConfigError("truncation radius x0 must be > 0");
    p.validate();
    switch (route) {
        case PropagationRoute::rotation_form:
            return truncated_rotation(n, t, x0, w, p);
        case PropagationRoute::spectral:
        case PropagationRoute::pde_oracle:
            return truncated_grid(n, t, x0, w, p, route, cfg);
        default:
            throw ConfigError("free-window is not a truncated-moment route");
    }
}

MomentSeries moment_series_pde(int n, const std::vector<double>& ts, double x0,
                               const Wavepacket& w, const PhysicalParams& p,
                               const PipelineConfig& cfg) {
    if (!(x0 > 0.0)) throw ConfigError("truncation radius x0 must be > 0");
    if (!std::is_sorted(ts.begin(), ts.end()))
        throw ConfigError("time grid must be sorted for incremental stepping");
    p.validate();
    const double u_request = std::log(x0 / std::sqrt(p.hbar));
    const double u_cap = cfg.pde.grid.u_max - cfg.cut_margin;
    const double u_cut = std::min(u_request, u_cap);

    std::vector<LogGrid::Side> sides{LogGrid::Side::positive};
    if (!packet_is_even(w)) sides.push_back(LogGrid::Side::negative);

    MomentSeries out;
    out.entries.resize(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        out.entries[i].t = ts[i];
        out.entries[i].n = n;
        out.entries[i].route = PropagationRoute::pde_oracle;
        out.entries[i].flags.push_back("truncated");
        if (u_request > u_cap)
            out.entries[i].flags.push_back("cut-at-grid-margin");
    }
    const double even_factor = packet_is_even(w) ? 2.0 : 1.0;
    for (LogGrid::Side side : sides) {
        LogGrid g = cfg.pde.grid;
        g.side = side;
        ReducedField f0 = reduce_packet(w, g, p.hbar, cfg.tail_tol);
        apply_edge_taper(f0, cfg.taper_width, cfg.taper_margin);
        PdeStepperConfig pcfg = cfg.pde;
        pcfg.grid = g;
        PdeStepper stepper(f0, p, pcfg);
        for (size_t i = 0; i < ts.size(); ++i) {
            stepper.advance_to(ts[i]);
            GridMomentAccum acc = weighted_sum(stepper.field(), n, u_cut);
            double add = even_factor * std::pow(p.hbar, 0.5 * n) * acc.value;
            double v = out.entries[i].value.value() + add;
            out.entries[i].value = ScaledReal::from_double(v);
            out.entries[i].err += even_factor * std::pow(p.hbar, 0.5 * n) *
                                      acc.edge_sample +
                                  1e-13 * std::abs(add);
        }
    }
    return out;
}

TotalX2 total_x2(double t, double x0, const Wavepacket& w,
                 const PhysicalParams& p, const PipelineConfig& cfg) {
    MomentValue saddle =
        moment_truncated(2, t, x0, w, p, PropagationRoute::rotation_form, cfg);
    TotalX2 r;
    r.saddle = saddle.value.value();
    r.free_left = free_x2_window(w, t, x0, WindowSide::left, p.hbar);
    r.free_right = free_x2_window(w, t, x0, WindowSide::right, p.hbar);
    r.value = r.saddle + r.free_left + r.free_right;
    r.err = saddle.err + 1e-12 * (std::abs(r.free_left) + std::abs(r.free_right));
    return r;
}

}  // namespace hyperq
