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

/// \file
/// Command-line front end. Exit codes: 0 success, 1 invalid input or a
/// failed check, 2 usage error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include <sys/resource.h>

#include "CLI11.hpp"
#include "polyvis/oracle.hpp"
#include "polyvis/scene_io.hpp"
#include "polyvis/trajvis.hpp"
#include "polyvis/visibility.hpp"

using namespace polyvis;

namespace {

struct Options {
    std::string scene;
    std::string output;
    std::uint64_t seed = 1;
    std::optional<double> c0, c1;
    bool hold_at_end = false;
    std::string entity = "q";
    double velocity = 0.0;
    std::size_t res = 64;
    bool cells = false;
    bool wedges = false;
    std::optional<double> highlight;
    std::vector<int> sizes{64, 128, 256};
    std::size_t random_scenes = 10;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

Entity parse_entity(const std::string& s) { return s == "r" ? Entity::r : Entity::q; }

void emit(const Options& o, const std::string& text) {
    if (o.output.empty())
        std::cout << text;
    else
        write_text(o.output, text);
}

int run_check(const Options& o) {
    Scene s = load_scene(o.scene);
    PathFinder pf(s.polygon);
    if (completely_visible(s.polygon, s.tau_q, s.tau_r))
        std::cout << "completely-visible\n";
    else if (totally_invisible(pf, s.tau_q, s.tau_r))
        std::cout << "totally-invisible\n";
    else
        std::cout << "partially-visible\n";
    return 0;
}

int run_glass(const Options& o) {
    Scene s = load_scene(o.scene);
    PathFinder pf(s.polygon);
    auto glasses = edge_glasses(pf, s.tau_q, s.tau_r);
    if (glasses.empty())
        std::cout << "empty\n";
    for (const EdgeGlass& g : glasses) {
        std::cout << "edges " << g.q_edge << " " << g.r_edge << " s1 [" << to_string(g.glass.s1_lo) << ", "
                  << to_string(g.glass.s1_hi) << "] s2 [" << to_string(g.glass.s2_lo) << ", "
                  << to_string(g.glass.s2_hi) << "]\n";
        for (const Segment& b : g.glass.bitangents)
            std::cout << "  bitangent " << b.a << " " << b.b << "\n";
    }
    return 0;
}

int run_intervals(const Options& o) {
    Scene s = load_scene(o.scene);
    double c0 = o.c0.value_or(s.c0.value_or(1.0));
    double c1 = o.c1.value_or(s.c1.value_or(1.0));
    LemmaOptions lo;
    lo.eps = s.eps;
    lo.hold_at_end = o.hold_at_end;
    auto res = solve_given_velocities(s.polygon, s.tau_q, s.tau_r, c0, c1, lo);
    for (const Interval& i : res.intervals)
        std::cout << fmt(i.lo) << " " << fmt(i.hi) << "\n";
    return 0;
}

int run_structure(const Options& o) {
    Scene s = load_scene(o.scene);
    emit(o, structure_json(build_structure(s.polygon, s.tau_q, s.tau_r, s.unit)));
    return 0;
}

int run_query(const Options& o) {
    Scene s = load_scene(o.scene);
    auto g = build_structure(s.polygon, s.tau_q, s.tau_r, s.unit);
    auto answers = query_velocity(g, parse_entity(o.entity), o.velocity);
    if (answers.empty())
        std::cout << "none\n";
    for (const VelocityAnswer& a : answers)
        std::cout << fmt(a.sub.lo) << " " << fmt(a.sub.hi) << " " << fmt(a.velocities.lo) << " "
                  << fmt(a.velocities.hi) << " cell " << a.cell << "\n";
    return 0;
}

int run_render(const Options& o) {
    Scene s = load_scene(o.scene);
    PathFinder pf(s.polygon);
    RenderLayers layers;
    layers.glasses = edge_glasses(pf, s.tau_q, s.tau_r);
    if (o.cells || o.wedges || o.highlight) {
        auto g = build_structure(s.polygon, s.tau_q, s.tau_r, s.unit);
        if (o.cells)
            layers.cells = g.cells;
        if (o.wedges)
            for (const EdgePairStructure& p : g.pairs)
                for (const Wedge& w : p.seg.wedges)
                    if (w.q_lo < w.q_hi && w.r_lo < w.r_hi)
                        layers.wedges.emplace_back(Segment(p.seg.s1.at(w.q_lo), p.seg.s1.at(w.q_hi)),
                                                   Segment(p.seg.s2.at(w.r_lo), p.seg.s2.at(w.r_hi)));
        if (o.highlight) {
            Entity viewer = parse_entity(o.entity);
            IntervalSet& target = viewer == Entity::q ? layers.r_highlight : layers.q_highlight;
            for (const VelocityAnswer& a : query_velocity(g, viewer, *o.highlight))
                target.push_back(a.sub);
        }
    }
    emit(o, render_svg(s, layers));
    return 0;
}

int run_oracle_diff(const Options& o) {
    Scene s = load_scene(o.scene);
    auto g = build_structure(s.polygon, s.tau_q, s.tau_r, s.unit);
    std::size_t total = 0;
    for (Entity viewer : {Entity::q, Entity::r}) {
        const Trajectory& own = viewer == Entity::q ? s.tau_q : s.tau_r;
        const Trajectory& other = viewer == Entity::q ? s.tau_r : s.tau_q;
        auto samples = uniform_samples(other.length(), o.res);
        double tol = 2.0 * other.length() / static_cast<double>(o.res - 1);
        std::vector<double> speeds;
        for (std::size_t k = 1; k <= o.res; ++k)
            speeds.push_back(own.length() / s.unit * static_cast<double>(k) / static_cast<double>(o.res));
        auto rows = oracle_velocity_sweep(s.polygon, s.tau_q, s.tau_r, viewer, speeds, s.unit, o.res);
        for (const SweepRow& row : rows) {
            IntervalSet claimed;
            for (const VelocityAnswer& a : query_velocity(g, viewer, row.velocity))
                claimed.push_back(a.sub);
            total += far_mismatches(samples, membership(samples, row.visible), claimed, tol);
        }
    }
    std::cout << "mode " << to_string(g.mode) << "\n";
    std::cout << "mismatch " << total << "\n";
    return total == 0 ? 0 : 1;
}

/// Comb with k teeth, one trajectory down the first tooth and one along
/// the base strip.
Scene comb_scene(int k) {
    Scene s;
    s.polygon = fixtures::comb(k);
    s.tau_q = Trajectory({Point(Rational(3, 2), Rational(9)), Point(Rational(3, 2), Rational(1))});
    s.tau_r = Trajectory({Point(Rational(1, 2), Rational(1, 2)), Point(Rational(4 * k + 1, 2), Rational(1, 2))});
    return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

long peak_rss_kb() {
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return u.ru_maxrss;
}

int run_bench(const Options& o) {
    std::cout << "comb n segment_structure_s wedges tree_slots peak_rss_kb\n";
    for (int n : o.sizes) {
        int k = std::max(1, (n - 4) / 4);
        Scene s = comb_scene(k);
        auto t0 = std::chrono::steady_clock::now();
        auto seg = build_segment_structure(s.polygon, s.tau_q.edge(0), s.tau_r.edge(0));
        double dt = seconds_since(t0);
        std::size_t slots = 0;
        for (const auto* tree : {&seg.tree_q, &seg.tree_r, &seg.tree_q_velocity, &seg.tree_r_velocity})
            for (std::size_t i = 0; i < tree->size(); ++i)
                slots += tree->participants(i);
        std::cout << s.polygon.size() << " " << fmt(dt) << " " << seg.wedges.size() << " " << slots << " "
                  << peak_rss_kb() << "\n";
    }
    std::cout << "random seed " << o.seed << " n mode structure_s\n";
    std::mt19937_64 rng(o.seed);
    for (std::size_t i = 0; i < o.random_scenes; ++i) {
        auto poly = generators::random_polygon(o.seed + i, 24);
        auto tq = generators::random_trajectory(poly, rng, 6);
        auto tr = generators::random_trajectory(poly, rng, 6);
        auto t0 = std::chrono::steady_clock::now();
        auto g = build_structure(poly, tq, tr);
        std::cout << poly.size() << " " << to_string(g.mode) << " " << fmt(seconds_since(t0)) << " cells "
                  << g.cells.size() << " pairs " << g.pairs.size() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mutual visibility of two entities moving inside a simple polygon"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "Seed for generated scenes (POLYVIS_SEED overrides)");

    auto scene_arg = [&](CLI::App* cmd) { cmd->add_option("scene", o.scene, "Scene JSON file")->required(); };
    auto out_arg = [&](CLI::App* cmd) { cmd->add_option("-o,--output", o.output, "Output file (default stdout)"); };

    auto* check = app.add_subcommand("check", "Complete visibility / total invisibility verdict");
    scene_arg(check);
    auto* glass = app.add_subcommand("glass", "Visibility glass of each trajectory edge pair");
    scene_arg(glass);
    auto* intervals = app.add_subcommand("intervals", "Time intervals of mutual visibility");
    scene_arg(intervals);
    intervals->add_option("--c0", o.c0, "Speed of q");
    intervals->add_option("--c1", o.c1, "Speed of r");
    intervals->add_flag("--hold-at-end", o.hold_at_end, "Entities stay at their last vertex");
    auto* structure = app.add_subcommand("structure", "Build the query structure and dump it as JSON");
    scene_arg(structure);
    out_arg(structure);
    auto* query = app.add_subcommand("query", "Visible sub-trajectories for a viewer speed");
    scene_arg(query);
    query->add_option("--entity", o.entity, "Viewer")->check(CLI::IsMember({"q", "r"}))->required();
    query->add_option("--velocity", o.velocity, "Viewer speed")->required();
    auto* render = app.add_subcommand("render", "SVG drawing of the scene");
    scene_arg(render);
    out_arg(render);
    render->add_flag("--cells", o.cells, "Draw structure cells");
    render->add_flag("--wedges", o.wedges, "Draw wedges of each edge pair");
    render->add_option("--velocity", o.highlight, "Highlight what the viewer sees at this speed");
    render->add_option("--entity", o.entity, "Viewer for --velocity")->check(CLI::IsMember({"q", "r"}));
    auto* diff = app.add_subcommand("oracle-diff", "Compare velocity queries with the sampling oracle");
    scene_arg(diff);
    diff->add_option("--res", o.res, "Samples per trajectory and velocities per viewer")
        ->check(CLI::Range(2, 4096));
    auto* bench = app.add_subcommand("bench", "Timing on comb scenes and random scenes");
    bench->add_option("--sizes", o.sizes, "Comb sizes (vertex counts)")->delimiter(',');
    bench->add_option("--random", o.random_scenes, "Number of random scenes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (const char* env = std::getenv("POLYVIS_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: POLYVIS_SEED is not an unsigned integer\n";
            return 2;
        }
    }

    try {
        if (*check)
            return run_check(o);
        if (*glass)
            return run_glass(o);
        if (*intervals)
            return run_intervals(o);
        if (*structure)
            return run_structure(o);
        if (*query)
            return run_query(o);
        if (*render)
            return run_render(o);
        if (*diff)
            return run_oracle_diff(o);
        if (*bench)
            return run_bench(o);
    } catch (const SceneError& e) {
        std::cerr << o.scene << ":" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
