#include "hyperq/observe/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace hyperq {

std::string format_sci(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

std::string log10_column(const ScaledReal& v) {
    // Zero has no finite log magnitude; keep the column parseable.
    return v.zero() ? "-inf" : format_sci(v.log10_mag);
}

}  // namespace

void write_moments_csv(std::ostream& os, const MomentSeries& series) {
    os << "t,n,route,value,log10_magnitude,err_estimate,flags\n";
    for (const auto& m : series.entries) {
        os << format_sci(m.t) << ',' << m.n << ',' << route_name(m.route)
           << ',' << format_sci(m.value.value()) << ','
           << log10_column(m.value) << ',' << format_sci(m.err) << ','
           << m.flags_joined() << '\n';
    }
}

void write_scan_csv(std::ostream& os,
                    const std::vector<DivergenceProfile>& profiles) {
    os << "t,x0,value,log10_magnitude,err_estimate,verdict,growth_ratio\n";
    for (const auto& p : profiles) {
        for (const auto& rung : p.ladder) {
            os << format_sci(p.t) << ',' << format_sci(rung.x0) << ','
               << format_sci(rung.value.value()) << ','
               << log10_column(rung.value) << ',' << format_sci(rung.err)
               << ',' << verdict_name(p.verdict) << ','
               << format_sci(p.growth_ratio) << '\n';
        }
    }
}

namespace {

struct Range {
    double lo = 0.0, hi = 1.0;
    void absorb(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_svg_chart(std::ostream& os, const std::string& title,
                     const std::vector<SvgSeries>& series) {
    const double w = 640, h = 400;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    Range rx, ry;
    bool any = false;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!any) {
                rx.lo = rx.hi = s.x[i];
                ry.lo = ry.hi = s.y[i];
                any = true;
            } else {
                rx.absorb(s.x[i]);
                ry.absorb(s.y[i]);
            }
        }
    if (!any) {
        rx = {0.0, 1.0};
        ry = {0.0, 1.0};
    }
    if (rx.hi == rx.lo) rx.hi = rx.lo + 1.0;
    if (ry.hi == ry.lo) ry.hi = ry.lo + 1.0;
    const auto px = [&](double x) {
        return ml + (x - rx.lo) / (rx.hi - rx.lo) * (w - ml - mr);
    };
    const auto py = [&](double y) {
        return h - mb - (y - ry.lo) / (ry.hi - ry.lo) * (h - mt - mb);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
       << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
       << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h
       << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"monospace\" font-size=\"14\">"
       << title << "</text>\n";
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
       << (w - ml - mr) << "\" height=\"" << (h - mt - mb)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 4.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 4.0;
        os << "<text x=\"" << num(px(fx)) << "\" y=\"" << (h - mb + 18)
           << "\" text-anchor=\"middle\" font-family=\"monospace\" "
              "font-size=\"10\">"
           << num(fx) << "</text>\n";
        os << "<text x=\"" << (ml - 6) << "\" y=\"" << num(py(fy) + 3)
           << "\" text-anchor=\"end\" font-family=\"monospace\" "
              "font-size=\"10\">"
           << num(fy) << "</text>\n";
    }
    double legend_y = mt + 14;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color
           << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!first) os << ' ';
            os << num(px(s.x[i])) << ',' << num(py(s.y[i]));
            first = false;
        }
        os << "\"/>\n";
        os << "<text x=\"" << (w - mr - 6) << "\" y=\"" << legend_y
           << "\" text-anchor=\"end\" font-family=\"monospace\" "
              "font-size=\"11\" fill=\"" << s.color << "\">"
           << s.label << "</text>\n";
        legend_y += 14;
    }
    os << "</svg>\n";
}

}  // namespace hyperq
