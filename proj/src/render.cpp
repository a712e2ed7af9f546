#include "cuspfold/render.hpp"

#include "cuspfold/error.hpp"
#include "cuspfold/tangency.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace cuspfold {

ColorMap default_colors()
{
    return {
        {RegionLabel::Sliding, "cyan"},
        {RegionLabel::Escaping, "red"},
        {RegionLabel::CrossingUp, "gray"},
        {RegionLabel::CrossingDown, "white"},
    };
}

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v + 0.0);
    return buf;
}

std::string exact(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class Canvas {
public:
    Canvas(const WorkingBox& box, int pixels) : box_(box), size_(pixels) {}

    double px(double x) const { return margin_ + (x - (box_.center.x - box_.rx)) / (2.0 * box_.rx) * size_; }
    double py(double y) const { return margin_ + ((box_.center.y + box_.ry) - y) / (2.0 * box_.ry) * size_; }
    double x_lo() const { return box_.center.x - box_.rx; }
    double x_hi() const { return box_.center.x + box_.rx; }
    double y_lo() const { return box_.center.y - box_.ry; }
    double y_hi() const { return box_.center.y + box_.ry; }
    int extent() const { return size_ + 2 * static_cast<int>(margin_); }
    double margin() const { return margin_; }
    bool in_x(double x) const { return x > x_lo() && x < x_hi(); }
    bool in_y(double y) const { return y > y_lo() && y < y_hi(); }

    template <class Pts>
    std::string polyline(const Pts& pts, const std::string& cls, const std::string& attrs) const
    {
        std::string s = "  <polyline class=\"" + cls + "\" fill=\"none\" " + attrs + " points=\"";
        bool first = true;
        for (const auto& [x, y] : pts) {
            if (!first) s += ' ';
            first = false;
            s += num(px(x)) + "," + num(py(y));
        }
        return s + "\"/>\n";
    }

private:
    WorkingBox box_;
    int size_;
    double margin_ = 20.0;
};

using Path2 = std::vector<std::pair<double, double>>;

// Keep only the part of a projected path that lies inside the box.
std::vector<Path2> clip(const Path2& path, const Canvas& c)
{
    std::vector<Path2> out;
    Path2 cur;
    for (const auto& p : path) {
        const bool in = p.first >= c.x_lo() && p.first <= c.x_hi() && p.second >= c.y_lo() && p.second <= c.y_hi();
        if (in) {
            cur.push_back(p);
        } else if (!cur.empty()) {
            if (cur.size() > 1) out.push_back(cur);
            cur.clear();
        }
    }
    if (cur.size() > 1) out.push_back(cur);
    return out;
}

} // namespace

std::string draw_sigma_diagram(const DiagramSpec& spec)
{
    for (RegionLabel r : {RegionLabel::Sliding, RegionLabel::Escaping, RegionLabel::CrossingUp, RegionLabel::CrossingDown}) {
        if (!spec.style.count(r)) {
            throw Error("color map missing region '" + std::string(region_name(r)) + "'");
        }
    }
    const Canvas c(spec.box, spec.pixels);
    const double lower_y = spec.sv.t * spec.lambda;
    const SectorLayout layout = sector_layout(spec.sv, spec.lambda, 1e300);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << c.extent() << "\" height=\""
        << c.extent() << "\" viewBox=\"0 0 " << c.extent() << " " << c.extent() << "\">\n";
    out << "  <title>switching plane of " << spec.sv.type_label() << ", lambda=" << num(spec.lambda) << "</title>\n";

    const ShowFlags& show = spec.show;
    if (show.regions) {
        const double xs[3] = {c.x_lo(), std::clamp(0.0, c.x_lo(), c.x_hi()), c.x_hi()};
        const double ys[3] = {c.y_lo(), std::clamp(lower_y, c.y_lo(), c.y_hi()), c.y_hi()};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double x0 = xs[i], x1 = xs[i + 1], y0 = ys[j], y1 = ys[j + 1];
                if (!(x1 > x0) || !(y1 > y0)) continue;
                const RegionLabel label = layout.at(i == 1 ? 1 : -1, j == 1 ? 1 : -1);
                out << "  <rect class=\"region\" data-region=\"" << region_name(label) << "\" data-x0=\"" << exact(x0)
                    << "\" data-x1=\"" << exact(x1) << "\" data-y0=\"" << exact(y0) << "\" data-y1=\"" << exact(y1)
                    << "\" x=\"" << num(c.px(x0)) << "\" y=\"" << num(c.py(y1)) << "\" width=\""
                    << num(c.px(x1) - c.px(x0)) << "\" height=\"" << num(c.py(y0) - c.py(y1)) << "\" fill=\""
                    << spec.style.at(label) << "\"/>\n";
            }
        }
    }
    if (show.regions || show.tangency_lines) {
        if (c.in_x(0.0)) {
            out << "  <line class=\"tangency\" data-curve=\"S+\" x1=\"" << num(c.px(0.0)) << "\" y1=\"" << num(c.py(c.y_lo()))
                << "\" x2=\"" << num(c.px(0.0)) << "\" y2=\"" << num(c.py(c.y_hi()))
                << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        if (c.in_y(lower_y)) {
            out << "  <line class=\"tangency\" data-curve=\"S-\" x1=\"" << num(c.px(c.x_lo())) << "\" y1=\""
                << num(c.py(lower_y)) << "\" x2=\"" << num(c.px(c.x_hi())) << "\" y2=\"" << num(c.py(lower_y))
                << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        if (c.in_x(0.0) && c.in_y(lower_y)) {
            out << "  <circle class=\"singular\" data-kind=\"" << (spec.lambda == 0.0 ? "cusp-fold" : "fold-fold")
                << "\" cx=\"" << num(c.px(0.0)) << "\" cy=\"" << num(c.py(lower_y))
                << "\" r=\"4\" stroke=\"black\" fill=\"black\"/>\n";
        }
    }
    if (show.tangency_lines) {
        out << "  <text class=\"label\" x=\"" << num(c.px(0.0) + 4) << "\" y=\"" << num(c.margin() + 14)
            << "\" font-size=\"12\">S+</text>\n";
        out << "  <text class=\"label\" x=\"" << num(c.px(c.x_hi()) - 22) << "\" y=\"" << num(c.py(lower_y) - 4)
            << "\" font-size=\"12\">S-</text>\n";
    }
    if (show.fold_arcs) {
        const SignVector& sv = spec.sv;
        const double reach = 0.4 * spec.box.ry;
        for (double frac : {-0.75, -0.5, -0.25, 0.25, 0.5, 0.75}) {
            // Z+ orbit tangent at (0, y0) on S+; visible where a g y0 > 0.
            const double y0 = frac * spec.box.ry;
            Path2 arc;
            for (int k = -20; k <= 20; ++k) {
                const Point3 q = flow_exact(sv, spec.lambda, Side::Upper, {0.0, y0, 0.0}, reach * k / 20.0);
                arc.emplace_back(q.x, q.y);
            }
            const bool visible = sv.a * sv.g * y0 > 0;
            for (const Path2& piece : clip(arc, c)) {
                out << c.polyline(piece, visible ? "fold-arc upper visible" : "fold-arc upper invisible",
                                  visible ? "stroke=\"black\"" : "stroke=\"black\" stroke-dasharray=\"4 3\"");
            }
            // Z- orbit tangent at (x0, lower_y) on S-; projects onto a vertical segment.
            const double x0 = frac * spec.box.rx;
            Path2 seg;
            for (int k = -1; k <= 1; ++k) {
                const Point3 q = flow_exact(sv, spec.lambda, Side::Lower, {x0, lower_y, 0.0}, reach * k);
                seg.emplace_back(q.x, q.y);
            }
            const bool lower_visible = sv.m * sv.t < 0;
            for (const Path2& piece : clip(seg, c)) {
                out << c.polyline(piece, lower_visible ? "fold-arc lower visible" : "fold-arc lower invisible",
                                  lower_visible ? "stroke=\"blue\"" : "stroke=\"blue\" stroke-dasharray=\"4 3\"");
            }
        }
    }
    if (show.cusp_orbit) {
        Path2 arc;
        for (int k = -40; k <= 40; ++k) {
            const Point3 q = cusp_orbit(spec.sv, k / 40.0);
            arc.emplace_back(q.x, q.y);
        }
        for (const Path2& piece : clip(arc, c)) {
            out << c.polyline(piece, "cusp-orbit", "stroke=\"purple\" stroke-width=\"2\"");
        }
    }
    if (show.sample_trajectories) {
        const PSVF field = unfolded_form(spec.sv, spec.lambda, 1e300);
        IntegratorOptions opts;
        opts.t_max = 3.0;
        opts.step = 1e-2;
        opts.box = spec.box;
        for (double sx : {-0.5, 0.5}) {
            for (double sy : {-0.5, 0.5}) {
                for (double sz : {-0.3, 0.3}) {
                    const Point3 q0 = spec.box.center +
                                      Point3{sx * spec.box.rx, sy * spec.box.ry, sz * spec.box.rz};
                    const Trajectory traj = integrate(field, q0, opts, ExactHint{spec.sv, spec.lambda});
                    for (const TrajectorySegment& seg : traj.segments) {
                        Path2 path;
                        for (const Sample& s : seg.samples) path.emplace_back(s.q.x, s.q.y);
                        const char* stroke = seg.regime == Regime::Upper     ? "stroke=\"darkgreen\""
                                             : seg.regime == Regime::Lower   ? "stroke=\"darkorange\""
                                                                             : "stroke=\"navy\" stroke-width=\"2\"";
                        for (const Path2& piece : clip(path, c)) {
                            out << c.polyline(piece, "trajectory " + std::string(regime_name(seg.regime)), stroke);
                        }
                    }
                }
            }
        }
    }
    out << "  <rect class=\"frame\" x=\"" << num(c.margin()) << "\" y=\"" << num(c.margin()) << "\" width=\""
        << spec.pixels << "\" height=\"" << spec.pixels << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string export_trajectory_csv(const Trajectory& traj)
{
    std::string out = "t,x,y,z,regime\r\n";
    for (const TrajectorySegment& seg : traj.segments) {
        const std::string regime = csv_field(std::string(regime_name(seg.regime)));
        for (const Sample& s : seg.samples) {
            out += exact(s.t) + "," + exact(s.q.x) + "," + exact(s.q.y) + "," + exact(s.q.z) + "," + regime + "\r\n";
        }
    }
    return out;
}

std::string export_events_json(const Trajectory& traj)
{
    nlohmann::json j = nlohmann::json::array();
    for (const TrajectoryEvent& e : traj.events) {
        j.push_back({{"t", e.t}, {"x", e.q.x}, {"y", e.q.y}, {"z", e.q.z}, {"kind", std::string(event_name(e.kind))}});
    }
    return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_record(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error("malformed CSV number '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<CsvRow> parse_trajectory_csv(const std::string& csv)
{
    std::vector<CsvRow> rows;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header) {
            if (line != "t,x,y,z,regime") throw Error("unexpected CSV header");
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto f = split_record(line);
        if (f.size() != 5) throw Error("CSV row must have 5 fields");
        Regime r;
        if (f[4] == "upper") r = Regime::Upper;
        else if (f[4] == "lower") r = Regime::Lower;
        else if (f[4] == "sliding") r = Regime::Sliding;
        else throw Error("unknown regime '" + f[4] + "'");
        rows.push_back({parse_double(f[0]), {parse_double(f[1]), parse_double(f[2]), parse_double(f[3])}, r});
    }
    return rows;
}

} // namespace cuspfold
