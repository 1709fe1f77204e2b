#pragma once

#include <string>

#include "json.hpp"

#include "hyperq/observe/moments.hpp"

namespace hyperq {

// Knobs of the printed-vs-oracle-vs-numeric comparison document. Each
// section also has fixed canonical sub-configurations (echoed in its
// output) chosen so every row is meaningfully populated.
struct ReportConfig {
    // Closed-form snapshot section.
    cplx alpha{0.4, 0.0};
    double x0_closed = 1.0;
    std::vector<int> l_list{0, 1};

    // Growth-law section (log-normal packet).
    double a = 1.0;
    double growth_t_max = 0.2;
    int growth_points = 21;

    // Spectral-weight width audit.
    double audit_a = 2.0;

    // Grid-route settings used by the route-equivalence and truncation
    // sections. Report-grade accuracy (~1e-7) rather than oracle-grade;
    // the acceptance suite drives the tighter configuration directly.
    double pde_dt = 1e-5;

    bool with_route_section = true;  // the slow section (finite-difference runs)
};

// All values in the document are printed / oracle / numeric labeled; a
// discrepancy is a populated row, never an exception.
nlohmann::ordered_json comparison_report(const ReportConfig& cfg = {});

std::string render_report_text(const nlohmann::ordered_json& rep);

}  // namespace hyperq
