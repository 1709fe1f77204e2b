#include "hyperq/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "hyperq/numerics/special.hpp"

namespace hyperq {

void LogGrid::validate() const {
    if (!(u_min < u_max)) throw ConfigError("grid needs u_min < u_max");
    if (n_points < 16 || (n_points & (n_points - 1)) != 0)
        throw ConfigError("grid size must be a power of two >= 16");
}

double ReducedField::norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return s * grid.du();
}

double SpectralField::norm() const {
    double s = 0.0;
    for (const cplx& v : weights) s += std::norm(v);
    return s * deps;
}

cplx chi_eval(double eps, double x, const EigenNormConstant& n) {
    if (x == 0.0) throw DomainError("chi is singular at x = 0");
    double ax = std::abs(x);
    return std::polar(1.0 / std::sqrt(n.n_s * ax), eps * std::log(ax));
}

cplx overlap_window(double eps, double eps2, double L,
                    const EigenNormConstant& n) {
    if (!(L > 0.0)) throw ConfigError("overlap window needs L > 0");
    double delta = eps - eps2;
    // 2 sides x integral over |u| <= L of e^{i delta u} / N_s.
    if (delta == 0.0) return {4.0 * L / n.n_s, 0.0};
    return {4.0 / n.n_s * std::sin(delta * L) / delta, 0.0};
}

ReducedField reduce_packet(const Wavepacket& w, const LogGrid& g, double hbar,
                           double tail_tol) {
    g.validate();
    if (!(hbar > 0.0)) throw ConfigError("hbar must be > 0");
    double sign = (g.side == LogGrid::Side::positive) ? 1.0 : -1.0;
    double root_h = std::sqrt(hbar);
    ReducedField f;
    f.grid = g;
    f.values.resize(g.n_points);
    double peak = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        double u = g.u(j);
        double x = sign * root_h * std::exp(u);
        cplx psi = eval_packet_real(w, x, hbar);
        f.values[j] = std::pow(hbar, 0.25) * std::exp(0.5 * u) * psi;
        peak = std::max(peak, std::abs(f.values[j]));
    }
    if (peak == 0.0) throw WindowError("packet is identically zero on grid");
    double lo = std::abs(f.values.front()), hi = std::abs(f.values.back());
    if (lo > tail_tol * peak || hi > tail_tol * peak) {
        std::ostringstream msg;
        msg << "packet tails not contained: |phi|/max = " << (lo / peak)
            << " (left), " << (hi / peak) << " (right) vs tolerance "
            << tail_tol;
        throw WindowError(msg.str());
    }
    return f;
}

SpectralField expand(const ReducedField& f) {
    UniformGrid g = f.grid.uniform();
    SpectralField s;
    s.deps = g.deps();
    s.eps_min = -(g.n / 2) * s.deps;
    s.weights = forward_centered(g, f.values);
    return s;
}

ReducedField synthesize(const SpectralField& s, const LogGrid& g) {
    g.validate();
    if ((int)s.weights.size() != g.n_points)
        throw ConfigError("spectral/grid size mismatch in synthesize");
    ReducedField f;
    f.grid = g;
    f.values = inverse_centered(g.uniform(), s.weights);
    return f;
}

void apply_edge_taper(ReducedField& f, double width, double margin) {
    const LogGrid& g = f.grid;
    for (int j = 0; j < g.n_points; ++j) {
        double u = g.u(j);
        double wl = smoothstep_cinf((u - g.u_min - margin) / width);
        double wr = smoothstep_cinf((g.u_max - margin - u) / width);
        f.values[j] *= wl * wr;
    }
}

namespace {

const char* side_name(LogGrid::Side s) {
    return s == LogGrid::Side::positive ? "positive" : "negative";
}

void write_row(std::ostream& os, double coord, const cplx& v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", coord, v.real(),
                  v.imag());
    os << buf;
}

}  // namespace

void write_field(std::ostream& os, const ReducedField& f) {
    os.precision(17);  // headers must roundtrip fractional grid bounds
    os << "# reduced-field u_min=" << f.grid.u_min << " u_max=" << f.grid.u_max
       << " n=" << f.grid.n_points << " side=" << side_name(f.grid.side)
       << "\n";
    os << "# columns: u re(phi) im(phi)\n";
    for (int j = 0; j < f.grid.n_points; ++j)
        write_row(os, f.grid.u(j), f.values[j]);
}

void write_field(std::ostream& os, const SpectralField& s) {
    os.precision(17);
    os << "# spectral-field eps_min=" << s.eps_min << " deps=" << s.deps
       << " n=" << s.weights.size() << " forward_sign=" << s.forward_sign
       << " N_s=" << s.n_s << "\n";
    os << "# columns: eps re(q) im(q)\n";
    for (size_t k = 0; k < s.weights.size(); ++k)
        write_row(os, s.eps((int)k), s.weights[k]);
}

ReducedField read_reduced_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# reduced-field", 0) != 0)
        throw ConfigError("not a reduced-field stream");
    ReducedField f;
    std::istringstream hdr(line.substr(15));
    std::string tok;
    while (hdr >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "u_min") f.grid.u_min = std::stod(val);
        else if (key == "u_max") f.grid.u_max = std::stod(val);
        else if (key == "n") f.grid.n_points = std::stoi(val);
        else if (key == "side")
            f.grid.side = (val == "negative") ? LogGrid::Side::negative
                                              : LogGrid::Side::positive;
    }
    f.grid.validate();
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        double u, re, im;
        if (!(row >> u >> re >> im))
            throw ConfigError("malformed field row: " + line);
        f.values.push_back({re, im});
    }
    if ((int)f.values.size() != f.grid.n_points)
        throw ConfigError("field row count does not match header");
    return f;
}

}  // namespace hyperq
