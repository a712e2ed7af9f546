#pragma once

#include "cuspfold/dynamics.hpp"
#include "cuspfold/psvf.hpp"
#include "cuspfold/regions.hpp"

#include <map>
#include <string>
#include <vector>

namespace cuspfold {

struct ShowFlags {
    bool regions = true;
    bool tangency_lines = true;
    bool fold_arcs = false;
    bool cusp_orbit = false;
    bool sample_trajectories = false;

    static ShowFlags none() { return {false, false, false, false, false}; }
    static ShowFlags all() { return {true, true, true, true, true}; }
};

using ColorMap = std::map<RegionLabel, std::string>;

ColorMap default_colors();

struct DiagramSpec {
    SignVector sv;
    double lambda = 0.0;
    WorkingBox box{};
    ShowFlags show{};
    ColorMap style = default_colors();
    int pixels = 480;
};

// Top-down view of the plane z = 0 over the box: sector fills, tangency
// lines, singular point, and optional arcs. Region rectangles carry
// data-region and world-coordinate data-x0/x1/y0/y1 attributes.
std::string draw_sigma_diagram(const DiagramSpec& spec);

// "t,x,y,z,regime" with one CRLF-terminated row per stored sample.
std::string export_trajectory_csv(const Trajectory& traj);

// JSON list of {t, x, y, z, kind}.
std::string export_events_json(const Trajectory& traj);

struct CsvRow {
    double t;
    Point3 q;
    Regime regime;
};

std::vector<CsvRow> parse_trajectory_csv(const std::string& csv);

// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

} // namespace cuspfold
