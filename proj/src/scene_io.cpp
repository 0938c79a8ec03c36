// Copyright 2026 The polyvis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polyvis/scene_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace polyvis {

using nlohmann::json;

SceneError::SceneError(Kind kind, const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column)
{
}

namespace {

struct TextPos {
    std::size_t line = 1;
    std::size_t column = 1;
};

TextPos position_of(const std::string& text, std::size_t offset) {
    TextPos p;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

/// Position of the first occurrence of a quoted key, or 1:1.
TextPos key_position(const std::string& text, const std::string& key) {
    auto at = text.find("\"" + key + "\"");
    return at == std::string::npos ? TextPos{} : position_of(text, at);
}

[[noreturn]] void fail(SceneError::Kind kind, const std::string& what, TextPos at) {
    throw SceneError(kind, what, at.line, at.column);
}

Rational read_number(const json& v, const std::string& where, TextPos at) {
    if (v.is_number_integer())
        return v.is_number_unsigned() ? Rational(mpz_class(std::to_string(v.get<unsigned long long>())))
                                      : Rational(mpz_class(std::to_string(v.get<long long>())));
    if (v.is_number_float())
        return decimal_rational(v.get<double>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception& e) {
            fail(SceneError::Kind::schema, where + ": " + e.what(), at);
        }
    }
    fail(SceneError::Kind::schema, where + ": expected a number or \"p/q\" string", at);
}

std::vector<Point> read_points(const json& doc, const std::string& text, const std::string& key) {
    TextPos at = key_position(text, key);
    if (!doc.contains(key))
        fail(SceneError::Kind::schema, "missing key \"" + key + "\"", at);
    const json& arr = doc.at(key);
    if (!arr.is_array())
        fail(SceneError::Kind::schema, key + ": expected an array of [x, y] pairs", at);
    std::vector<Point> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string where = key + "[" + std::to_string(i) + "]";
        const json& p = arr[i];
        if (!p.is_array() || p.size() != 2)
            fail(SceneError::Kind::schema, where + ": expected [x, y]", at);
        out.emplace_back(read_number(p[0], where + "[0]", at), read_number(p[1], where + "[1]", at));
    }
    return out;
}

/// Correctly rounded conversion (get_d truncates).
double nearest_double(const Rational& r) {
    double d = r.get_d();
    double up = std::nextafter(d, INFINITY);
    Rational err_d = abs(r - to_rational(d));
    Rational err_up = abs(r - to_rational(up));
    return err_up < err_d ? up : d;
}

std::optional<double> read_scalar(const json& doc, const std::string& text, const std::string& key) {
    if (!doc.contains(key))
        return std::nullopt;
    TextPos at = key_position(text, key);
    const json& j = doc.at(key);
    double v = j.is_number() ? j.get<double>() : nearest_double(read_number(j, key, at));
    if (!(v > 0.0))
        fail(SceneError::Kind::schema, key + ": must be positive", at);
    return v;
}

json coord(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1 && c.get_num().fits_slong_p())
        return c.get_num().get_si();
    return to_string(c);
}

json point_json(const Point& p) { return json::array({coord(p.x()), coord(p.y())}); }

json points_json(const std::vector<Point>& pts) {
    json a = json::array();
    for (const Point& p : pts)
        a.push_back(point_json(p));
    return a;
}

json intervals_json(const IntervalSet& set) {
    json a = json::array();
    for (const Interval& i : set)
        a.push_back(json::array({i.lo, i.hi}));
    return a;
}

json glass_json(const VisibilityGlass& g) {
    json o;
    o["empty"] = g.empty;
    if (g.empty)
        return o;
    o["s1"] = json::array({coord(g.s1_lo), coord(g.s1_hi)});
    o["s2"] = json::array({coord(g.s2_lo), coord(g.s2_hi)});
    json b = json::array();
    for (const Segment& s : g.bitangents)
        b.push_back(json::array({point_json(s.a), point_json(s.b)}));
    o["bitangents"] = b;
    return o;
}

const char* entity_name(Entity e) { return e == Entity::q ? "q" : "r"; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

/// Maps scene coordinates to SVG user units with y pointing down.
class Canvas {
public:
    explicit Canvas(const Scene& scene) {
        bool first = true;
        auto grow = [&](const Point& p) {
            double x = p.approx_x(), y = p.approx_y();
            if (first) {
                x0_ = x1_ = x;
                y0_ = y1_ = y;
                first = false;
            }
            x0_ = std::min(x0_, x);
            x1_ = std::max(x1_, x);
            y0_ = std::min(y0_, y);
            y1_ = std::max(y1_, y);
        };
        for (const Point& p : scene.polygon.vertices())
            grow(p);
        double span = std::max({x1_ - x0_, y1_ - y0_, 1e-9});
        scale_ = 480.0 / span;
        margin_ = 10.0;
    }

    double width() const { return (x1_ - x0_) * scale_ + 2 * margin_; }
    double height() const { return (y1_ - y0_) * scale_ + 2 * margin_; }
    std::string x(const Point& p) const { return fmt((p.approx_x() - x0_) * scale_ + margin_); }
    std::string y(const Point& p) const { return fmt((y1_ - p.approx_y()) * scale_ + margin_); }
    std::string xy(const Point& p) const { return x(p) + "," + y(p); }

private:
    double x0_ = 0, x1_ = 0, y0_ = 0, y1_ = 0;
    double scale_ = 1, margin_ = 0;
};

std::string points_attr(const Canvas& c, const std::vector<Point>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i)
        s += (i ? " " : "") + c.xy(pts[i]);
    return s;
}

/// Quadrilateral between two segments without a self-crossing.
std::vector<Point> quad(const Segment& s1, const Segment& s2) {
    if (!(s1.a == s2.a) && !(s1.b == s2.b)) {
        SegmentIntersection x = segment_intersect(Segment(s1.a, s2.a), Segment(s1.b, s2.b));
        if (x.kind == SegmentIntersection::Kind::point)
            return {s1.a, s1.b, s2.a, s2.b};
    }
    return {s1.a, s1.b, s2.b, s2.a};
}

/// Sub-polyline of `t` between two arc lengths.
std::vector<Point> sub_polyline(const Trajectory& t, double lo, double hi) {
    lo = std::clamp(lo, 0.0, t.length());
    hi = std::clamp(hi, lo, t.length());
    std::vector<Point> pts{t.point_at_arclen(lo)};
    for (std::size_t i = 1; i + 1 < t.size(); ++i)
        if (t.cumulative(i) > lo && t.cumulative(i) < hi)
            pts.push_back(t.vertex(i));
    pts.push_back(t.point_at_arclen(hi));
    return pts;
}

}  // namespace

Scene parse_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::string what = e.what();
        auto cut = what.find("] ");
        fail(SceneError::Kind::syntax, cut == std::string::npos ? what : what.substr(cut + 2),
             position_of(text, byte));
    }
    if (!doc.is_object())
        fail(SceneError::Kind::schema, "scene must be a JSON object", TextPos{});
    static const char* const known[] = {"polygon", "tau_q", "tau_r", "c0", "c1", "unit", "eps"};
    for (const auto& item : doc.items())
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known))
            fail(SceneError::Kind::schema, "unknown key \"" + item.key() + "\"", key_position(text, item.key()));

    auto polygon = read_points(doc, text, "polygon");
    auto tau_q = read_points(doc, text, "tau_q");
    auto tau_r = read_points(doc, text, "tau_r");
    auto c0 = read_scalar(doc, text, "c0");
    auto c1 = read_scalar(doc, text, "c1");
    auto unit = read_scalar(doc, text, "unit");
    auto eps = read_scalar(doc, text, "eps");

    Scene scene;
    try {
        scene.polygon = SimplePolygon(std::move(polygon));
    } catch (const ValidationError& e) {
        fail(SceneError::Kind::validation, e.what(), key_position(text, "polygon"));
    }
    if (scene.polygon.was_reversed())
        scene.warnings.emplace_back("polygon given clockwise; reversed to counterclockwise");
    for (auto [key, pts, out] : {std::tuple{"tau_q", &tau_q, &scene.tau_q}, std::tuple{"tau_r", &tau_r, &scene.tau_r}}) {
        try {
            *out = Trajectory(std::move(*pts));
            validate_trajectory(scene.polygon, *out, key);
        } catch (const ValidationError& e) {
            fail(SceneError::Kind::validation, std::string(key) + ": " + e.what(), key_position(text, key));
        }
    }
    scene.c0 = c0;
    scene.c1 = c1;
    scene.unit = unit.value_or(1.0);
    scene.eps = eps;
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

std::string serialize_scene(const Scene& scene) {
    json doc;
    doc["polygon"] = points_json(scene.polygon.vertices());
    doc["tau_q"] = points_json(scene.tau_q.vertices());
    doc["tau_r"] = points_json(scene.tau_r.vertices());
    if (scene.c0)
        doc["c0"] = *scene.c0;
    if (scene.c1)
        doc["c1"] = *scene.c1;
    if (scene.unit != 1.0)
        doc["unit"] = scene.unit;
    if (scene.eps)
        doc["eps"] = *scene.eps;
    return doc.dump(2) + "\n";
}

std::string structure_json(const GeneralVisStructure& s) {
    json doc;
    doc["schema"] = "polyvis.structure";
    doc["version"] = 1;
    doc["mode"] = to_string(s.mode);
    doc["unit"] = s.unit;
    doc["polygon"] = points_json(s.polygon.vertices());
    doc["tau_q"] = points_json(s.tq.vertices());
    doc["tau_r"] = points_json(s.tr.vertices());
    doc["vis_q"] = intervals_json(s.vis_q);
    doc["vis_r"] = intervals_json(s.vis_r);
    if (s.connecting) {
        const ConnectingVertices& cv = *s.connecting;
        json c;
        c["ok"] = cv.ok;
        if (cv.ok) {
            c["upper"] = json::array({cv.q1, cv.r1});
            c["lower"] = json::array({cv.q2, cv.r2});
        } else {
            c["reason"] = cv.reason;
        }
        doc["connecting"] = c;
    }
    json cells = json::array();
    for (const Cell& cell : s.cells) {
        json c;
        c["entity"] = entity_name(cell.entity);
        c["vertex"] = cell.vertex;
        c["upper_point"] = point_json(cell.upper_point);
        c["region"] = points_json(cell.region);
        c["q_vertices"] = cell.q_vertices;
        c["r_vertices"] = cell.r_vertices;
        cells.push_back(c);
    }
    doc["cells"] = cells;
    json pairs = json::array();
    for (const EdgePairStructure& p : s.pairs) {
        json o;
        o["q_edge"] = p.q_edge;
        o["r_edge"] = p.r_edge;
        o["glass"] = glass_json(p.seg.glass);
        json wedges = json::array();
        for (const Wedge& w : p.seg.wedges) {
            json wj;
            wj["q"] = json::array({coord(w.q_lo), coord(w.q_hi)});
            wj["r"] = json::array({coord(w.r_lo), coord(w.r_hi)});
            wj["q_arc"] = json::array({w.q_range.lo, w.q_range.hi});
            wj["r_arc"] = json::array({w.r_range.lo, w.r_range.hi});
            wedges.push_back(wj);
        }
        o["wedges"] = wedges;
        pairs.push_back(o);
    }
    doc["pairs"] = pairs;
    return doc.dump(2) + "\n";
}

std::vector<EdgeGlass> edge_glasses(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr) {
    std::vector<EdgeGlass> out;
    for (std::size_t i = 0; i < tq.edge_count(); ++i)
        for (std::size_t j = 0; j < tr.edge_count(); ++j) {
            VisibilityGlass g = visibility_glass(paths, tq.edge(i), tr.edge(j));
            if (!g.empty)
                out.push_back({i, j, std::move(g)});
        }
    return out;
}

std::string render_svg(const Scene& scene, const RenderLayers& layers) {
    Canvas c(scene);
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(c.width()) << "\" height=\""
      << fmt(c.height()) << "\">\n";

    o << "<g id=\"polygon\">\n<path d=\"";
    const auto& vs = scene.polygon.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i)
        o << (i ? " L " : "M ") << c.xy(vs[i]);
    o << " Z\" fill=\"#f2f2f2\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n</g>\n";

    if (!layers.cells.empty()) {
        o << "<g id=\"cells\" fill=\"none\" stroke=\"#8e44ad\" stroke-width=\"1\">\n";
        for (const Cell& cell : layers.cells)
            o << "<polygon points=\"" << points_attr(c, cell.region) << "\"/>\n";
        o << "</g>\n";
    }

    if (!layers.glasses.empty()) {
        o << "<g id=\"glass\" fill=\"#f5b041\" fill-opacity=\"0.35\" stroke=\"none\">\n";
        for (const EdgeGlass& g : layers.glasses)
            o << "<polygon points=\"" << points_attr(c, quad(g.glass.s1_visible, g.glass.s2_visible)) << "\"/>\n";
        o << "</g>\n";
        bool any = std::any_of(layers.glasses.begin(), layers.glasses.end(),
                               [](const EdgeGlass& g) { return !g.glass.bitangents.empty(); });
        if (any) {
            o << "<g id=\"bitangents\" stroke=\"#d35400\" stroke-width=\"1\" stroke-dasharray=\"6,4\">\n";
            for (const EdgeGlass& g : layers.glasses)
                for (const Segment& b : g.glass.bitangents)
                    o << "<line x1=\"" << c.x(b.a) << "\" y1=\"" << c.y(b.a) << "\" x2=\"" << c.x(b.b)
                      << "\" y2=\"" << c.y(b.b) << "\"/>\n";
            o << "</g>\n";
        }
    }

    if (!layers.wedges.empty()) {
        o << "<g id=\"wedges\" fill=\"#27ae60\" fill-opacity=\"0.25\" stroke=\"#27ae60\" stroke-width=\"0.5\">\n";
        for (const auto& [s1, s2] : layers.wedges)
            o << "<polygon points=\"" << points_attr(c, quad(s1, s2)) << "\"/>\n";
        o << "</g>\n";
    }

    o << "<g id=\"trajectories\" fill=\"none\" stroke-width=\"2\">\n"
      << "<polyline stroke=\"#2471a3\" points=\"" << points_attr(c, scene.tau_q.vertices()) << "\"/>\n"
      << "<polyline stroke=\"#c0392b\" points=\"" << points_attr(c, scene.tau_r.vertices()) << "\"/>\n"
      << "</g>\n";

    if (!layers.q_highlight.empty() || !layers.r_highlight.empty()) {
        o << "<g id=\"visible\" fill=\"none\" stroke=\"#f1c40f\" stroke-width=\"5\" stroke-opacity=\"0.8\">\n";
        for (const Interval& i : layers.q_highlight)
            o << "<polyline points=\"" << points_attr(c, sub_polyline(scene.tau_q, i.lo, i.hi)) << "\"/>\n";
        for (const Interval& i : layers.r_highlight)
            o << "<polyline points=\"" << points_attr(c, sub_polyline(scene.tau_r, i.lo, i.hi)) << "\"/>\n";
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush())
        throw std::runtime_error("cannot write " + path);
}

}  // namespace polyvis
