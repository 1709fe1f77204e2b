#pragma once

#include <iosfwd>
#include <string>

#include "hyperq/observe/divergence.hpp"
#include "hyperq/observe/moments.hpp"

namespace hyperq {

// All columnar output uses scientific notation with 17 significant digits
// (round-trippable doubles) and a fixed column order, so repeated runs are
// byte-comparable.
std::string format_sci(double v);

// Columns: t,n,route,value,log10_magnitude,err_estimate,flags
void write_moments_csv(std::ostream& os, const MomentSeries& series);

// Columns: t,x0,value,log10_magnitude,err_estimate,verdict,growth_ratio
void write_scan_csv(std::ostream& os,
                    const std::vector<DivergenceProfile>& profiles);

// Minimal static line chart: polylines on a linear-linear canvas with axis
// frame and tick labels. Points with non-finite y are skipped.
struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x, y;
};
void write_svg_chart(std::ostream& os, const std::string& title,
                     const std::vector<SvgSeries>& series);

}  // namespace hyperq
