// Acceptance checks: one PASS/FAIL line per criterion.
// Usage: acceptance <polyvis-cli> <scene-dir> <work-dir>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyvis/oracle.hpp"
#include "polyvis/range_trees.hpp"
#include "polyvis/scene_io.hpp"
#include "polyvis/trajvis.hpp"
#include "polyvis/visibility.hpp"

using namespace polyvis;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Point h(long x2, long y2) { return Point(Rational(x2, 2), Rational(y2, 2)); }

/// Grid with spacing 1/64 of each trajectory length.
constexpr std::size_t kRes = 65;

IntervalSet drop_points(IntervalSet set) {
    set.erase(std::remove_if(set.begin(), set.end(), [](const Interval& i) { return i.hi <= i.lo; }), set.end());
    return set;
}

/// Glass verdict and projections against the sampled grid.
Outcome criterion1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    int verdict_ok = 0, projection_ok = 0, nonempty = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto poly = generators::random_polygon(seed, 24);
        auto [s1, s2] = generators::random_segment_pair(poly, rng);
        auto glass = visibility_glass(poly, s1, s2);
        Trajectory t1({s1.a, s1.b}), t2({s2.a, s2.b});
        auto grid = oracle_vis_grid(poly, t1, t2, kRes);
        double q_min = INFINITY, q_max = -INFINITY, r_min = INFINITY, r_max = -INFINITY;
        for (std::size_t i = 0; i < kRes; ++i)
            for (std::size_t j = 0; j < kRes; ++j)
                if (grid.at(i, j)) {
                    q_min = std::min(q_min, grid.q_samples[i] / t1.length());
                    q_max = std::max(q_max, grid.q_samples[i] / t1.length());
                    r_min = std::min(r_min, grid.r_samples[j] / t2.length());
                    r_max = std::max(r_max, grid.r_samples[j] / t2.length());
                }
        bool grid_empty = q_min == INFINITY;
        if (grid_empty == glass.empty)
            ++verdict_ok;
        if (glass.empty || grid_empty) {
            if (glass.empty && grid_empty)
                ++projection_ok;
            continue;
        }
        ++nonempty;
        double err = std::max({std::abs(glass.s1_lo.get_d() - q_min), std::abs(glass.s1_hi.get_d() - q_max),
                               std::abs(glass.s2_lo.get_d() - r_min), std::abs(glass.s2_hi.get_d() - r_max)});
        worst = std::max(worst, err);
        if (err <= 1.0 / 64 + 1e-12)
            ++projection_ok;
    }
    double secs = seconds_since(t0);
    Outcome o;
    o.pass = verdict_ok == 200 && projection_ok == 200 && secs < 60.0;
    o.detail = "verdict " + std::to_string(verdict_ok) + "/200, projections " + std::to_string(projection_ok) +
               "/200 (non-empty " + std::to_string(nonempty) + ", worst " + fmt("%.5f", worst) + " <= 1/64), " +
               fmt("%.1f", secs) + " s < 60 s";
    return o;
}

/// Time intervals against the replay at dt = 1 / (4L).
Outcome criterion2() {
    auto t0 = Clock::now();
    struct Case {
        SimplePolygon poly;
        Trajectory tq, tr;
        double c0, c1;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::square(), Trajectory({{1, 1}, {1, 9}}), Trajectory({{9, 1}, {9, 9}}), 1, 1});
    cases.push_back({fixtures::upoly(), Trajectory({h(1, 18), h(1, 1)}), Trajectory({h(19, 18), h(19, 1)}), 1, 1});
    cases.push_back({fixtures::upoly(), Trajectory({h(1, 18), h(1, 8)}), Trajectory({h(19, 18), h(19, 8)}), 1, 1});
    std::mt19937_64 rng(202);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto poly = generators::random_polygon(1000 + seed, 24);
        auto tq = generators::random_trajectory(poly, rng, 4, true);
        auto tr = generators::random_trajectory(poly, rng, 4, true);
        double c0 = generators::random_velocity(rng), c1 = generators::random_velocity(rng);
        cases.push_back({poly, tq, tr, c0, c1});
    }
    int ok = 0;
    double worst = 0.0;
    bool canonical = false;
    std::string first_bad;
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const Case& c = cases[k];
        auto res = solve_given_velocities(c.poly, c.tq, c.tr, c.c0, c.c1);
        double tol = 1.0 / static_cast<double>(res.L);
        auto truth = drop_points(oracle_time_intervals(c.poly, c.tq, c.tr, c.c0, c.c1, tol / 4.0));
        bool good = truth.size() == res.intervals.size();
        double err = 0.0;
        for (std::size_t i = 0; good && i < truth.size(); ++i)
            err = std::max({err, std::abs(truth[i].lo - res.intervals[i].lo),
                            std::abs(truth[i].hi - res.intervals[i].hi)});
        good = good && err <= tol;
        if (good) {
            ++ok;
            worst = std::max(worst, err / tol);
        } else if (first_bad.empty()) {
            first_bad = ", first failure case " + std::to_string(k);
        }
        if (k == 1)
            canonical = res.intervals.size() == 1 && std::abs(res.intervals[0].lo - 7.0) <= tol &&
                        std::abs(res.intervals[0].hi - 8.5) <= tol;
    }
    double secs = seconds_since(t0);
    Outcome o;
    o.pass = ok == static_cast<int>(cases.size()) && canonical && secs < 120.0;
    o.detail = std::to_string(ok) + "/" + std::to_string(cases.size()) + " scenes within 1/L (worst " +
               fmt("%.3f", worst) + " L), UPOLY [7, 8.5] " + (canonical ? "yes" : "no") + first_bad + ", " +
               fmt("%.1f", secs) + " s < 120 s";
    return o;
}

/// Wedge cross checks and position queries against grid rows and columns.
Outcome criterion3() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(303);
    std::size_t wedges = 0, bad_pairs = 0, mismatches = 0, queries = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto poly = generators::random_polygon(2000 + seed, 24);
        auto [s1, s2] = generators::random_segment_pair(poly, rng);
        auto st = build_segment_structure(poly, s1, s2);
        for (const Wedge& w : st.wedges) {
            ++wedges;
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) {
                    Point a = s1.at(w.q_lo + (w.q_hi - w.q_lo) * Rational(i, 7));
                    Point b = s2.at(w.r_lo + (w.r_hi - w.r_lo) * Rational(j, 7));
                    if (!sees(poly, a, b))
                        ++bad_pairs;
                }
        }
        Trajectory t1({s1.a, s1.b}), t2({s2.a, s2.b});
        auto grid = oracle_vis_grid(poly, t1, t2, kRes);
        double tol_r = 2.0 * t2.length() / (kRes - 1), tol_q = 2.0 * t1.length() / (kRes - 1);
        for (std::size_t i = 1; i < kRes; ++i) {
            auto ans = query_positions(st, grid.q_samples[i], grid.r_samples[i]);
            std::vector<char> row(kRes), col(kRes);
            for (std::size_t j = 0; j < kRes; ++j) {
                row[j] = grid.at(i, j) ? 1 : 0;
                col[j] = grid.at(j, i) ? 1 : 0;
            }
            mismatches += far_mismatches(grid.r_samples, row, ans.r_visible, tol_r);
            mismatches += far_mismatches(grid.q_samples, col, ans.q_visible, tol_q);
            queries += 2;
        }
    }
    Outcome o;
    o.pass = bad_pairs == 0 && mismatches == 0;
    o.detail = std::to_string(wedges) + " wedges, " + std::to_string(bad_pairs) + " hidden cross pairs; " +
               std::to_string(queries) + " position queries, " + std::to_string(mismatches) +
               " samples off by more than 2 cells, " + fmt("%.1f", seconds_since(t0)) + " s";
    return o;
}

std::size_t velocity_mismatches(const GeneralVisStructure& s, Entity viewer, std::size_t& rows) {
    const Trajectory& own = viewer == Entity::q ? s.tq : s.tr;
    const Trajectory& other = viewer == Entity::q ? s.tr : s.tq;
    std::vector<double> speeds;
    for (int k = 1; k <= 128; ++k)
        speeds.push_back(own.length() / s.unit * k / 128.0);
    auto sweep = oracle_velocity_sweep(s.polygon, s.tq, s.tr, viewer, speeds, s.unit, kRes);
    auto samples = uniform_samples(other.length(), kRes);
    double tol = 2.0 * other.length() / (kRes - 1);
    std::size_t bad = 0;
    for (const SweepRow& row : sweep) {
        IntervalSet claimed;
        for (const VelocityAnswer& a : query_velocity(s, viewer, row.velocity))
            claimed.push_back(a.sub);
        bad += far_mismatches(samples, membership(samples, row.visible), claimed, tol);
        ++rows;
    }
    return bad;
}

/// Velocity queries against the sweep; fallback scenes via the general structure.
Outcome criterion4() {
    auto t0 = Clock::now();
    struct Case {
        SimplePolygon poly;
        Trajectory tq, tr;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::upoly(), Trajectory({h(1, 18), h(1, 4), h(1, 1)}),
                     Trajectory({h(19, 18), h(19, 4), h(19, 1)})});
    cases.push_back({fixtures::comb(4),
                     Trajectory({h(3, 18), h(3, 3), h(7, 3), h(7, 18), h(8, 18), h(8, 3), h(11, 3), h(11, 18),
                                 h(12, 18), h(12, 3), h(15, 3), h(15, 18)}),
                     Trajectory({h(1, 1), h(9, 1), h(17, 1)})});
    std::mt19937_64 rng(404);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto poly = generators::random_polygon(3000 + seed, 24);
        auto tq = generators::random_trajectory(poly, rng, 10);
        auto tr = generators::random_trajectory(poly, rng, 10);
        cases.push_back({poly, tq, tr});
    }
    std::size_t rows = 0, bad = 0, fallbacks = 0, fallback_bad = 0, scenes_ok = 0;
    std::array<int, 5> modes{};
    for (const Case& c : cases) {
        auto s = build_structure(c.poly, c.tq, c.tr);
        ++modes[static_cast<int>(s.mode)];
        std::size_t b = velocity_mismatches(s, Entity::q, rows) + velocity_mismatches(s, Entity::r, rows);
        bad += b;
        scenes_ok += b == 0;
        auto cv = scan_connecting_vertices(c.poly, c.tq, c.tr);
        if (!cv.ok && s.mode != GeneralVisStructure::Mode::complete_visibility &&
            s.mode != GeneralVisStructure::Mode::total_invisibility) {
            ++fallbacks;
            auto g = build_general_structure(c.poly, c.tq, c.tr);
            fallback_bad += velocity_mismatches(g, Entity::q, rows) + velocity_mismatches(g, Entity::r, rows);
        }
    }
    Outcome o;
    o.pass = bad == 0 && fallback_bad == 0;
    o.detail = std::to_string(scenes_ok) + "/" + std::to_string(cases.size()) + " scenes exact within 2 cells (" +
               std::to_string(rows) + " velocity rows, " + std::to_string(bad) + " far samples); modes c/t/s/r/g " +
               std::to_string(modes[0]) + "/" + std::to_string(modes[1]) + "/" + std::to_string(modes[2]) + "/" +
               std::to_string(modes[3]) + "/" + std::to_string(modes[4]) + "; " + std::to_string(fallbacks) +
               " fallback scenes, " + std::to_string(fallback_bad) + " far samples via general, " +
               fmt("%.1f", seconds_since(t0)) + " s";
    return o;
}

/// Range-tree marking bound, stabbing against linear scans, visibility areas.
Outcome criterion5() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(505);
    std::size_t markings = 0, violations = 0;
    int worst_level = 0;
    for (std::uint64_t seed = 1; markings < 10000; ++seed) {
        auto poly = generators::random_polygon(4000 + seed, 24);
        auto [host, other] = generators::random_segment_pair(poly, rng);
        VisRangeTree tree(host, host.length() / 64.0);
        for (int k = 0; k < 100 && markings < 10000; ++k) {
            Point viewer = generators::random_interior_point(poly, rng);
            try {
                tree.mark(poly, viewer, k, host.length() / 64.0);
            } catch (const std::logic_error&) {
                ++violations;
            }
            ++markings;
        }
        worst_level = std::max(worst_level, tree.max_marks_per_level());
    }

    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::vector<EndpointTree<int>::Entry> entries;
    for (int i = 0; i < 100; ++i) {
        double a = coord(rng), b = coord(rng);
        entries.push_back({std::min(a, b), std::max(a, b), i});
    }
    EndpointTree<int> et(entries);
    std::size_t stab_bad = 0;
    for (int p = 0; p < 1000; ++p) {
        double x = p % 10 == 0 ? entries[static_cast<std::size_t>(p / 10)].lo : coord(rng);
        auto got = et.stab(x);
        std::vector<std::size_t> want;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i].lo <= x && x <= entries[i].hi)
                want.push_back(i);
        std::sort(got.begin(), got.end());
        stab_bad += got != want;
    }

    std::size_t area_bad = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto poly = generators::random_polygon(5000 + seed, 24);
        Point p = generators::random_interior_point(poly, rng);
        area_bad += visibility_polygon(poly, p).area2() != oracle_visibility_area2(poly, p);
    }
    Outcome o;
    o.pass = violations == 0 && worst_level <= 2 && stab_bad == 0 && area_bad == 0;
    o.detail = std::to_string(markings) + " markings, max " + std::to_string(worst_level) + " per level, " +
               std::to_string(violations) + " violations; " + std::to_string(stab_bad) +
               "/1000 stab mismatches; " + std::to_string(area_bad) + "/100 area mismatches, " +
               fmt("%.1f", seconds_since(t0)) + " s";
    return o;
}

/// Segment-structure build time on combs of 64, 128 and 256 vertices.
Outcome criterion6() {
    std::vector<double> times;
    std::vector<std::size_t> sizes;
    for (int n : {64, 128, 256}) {
        int k = (n - 4) / 4;
        auto poly = fixtures::comb(k);
        Segment s1(Point(Rational(3, 2), Rational(9)), Point(Rational(3, 2), Rational(1)));
        Segment s2(Point(Rational(1, 2), Rational(1, 2)), Point(Rational(4 * k + 1, 2), Rational(1, 2)));
        double best = INFINITY;
        for (int rep = 0; rep < 5; ++rep) {
            auto t0 = Clock::now();
            auto st = build_segment_structure(poly, s1, s2);
            best = std::min(best, seconds_since(t0));
        }
        times.push_back(best);
        sizes.push_back(poly.size());
    }
    double r1 = times[1] / times[0], r2 = times[2] / times[1];
    Outcome o;
    o.pass = r1 <= 2.6 && r2 <= 2.6;
    o.detail = "n " + std::to_string(sizes[0]) + "/" + std::to_string(sizes[1]) + "/" + std::to_string(sizes[2]) +
               ": " + fmt("%.4f", times[0]) + "/" + fmt("%.4f", times[1]) + "/" + fmt("%.4f", times[2]) +
               " s, ratios " + fmt("%.2f", r1) + " and " + fmt("%.2f", r2) + " <= 2.6";
    return o;
}

std::string run_capture(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return "<popen failed>";
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    int status = pclose(pipe);
    return out + "<status " + std::to_string(status) + ">";
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Byte-identical CLI output across two runs.
Outcome criterion7(const std::string& cli, const fs::path& scenes, const fs::path& work) {
    fs::create_directories(work);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(scenes))
        if (e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::size_t runs = 0, differ = 0, failed = 0;
    for (const fs::path& f : files) {
        Scene s = load_scene(f.string());
        std::string q = "'" + cli + "' ";
        std::string path = "'" + f.string() + "'";
        std::vector<std::string> cmds = {
            q + "intervals " + path,
            q + "query " + path + " --entity q --velocity " + fmt("%.6f", s.tau_q.length() / 2),
            q + "query " + path + " --entity r --velocity " + fmt("%.6f", s.tau_r.length() * 0.9),
        };
        for (const std::string& c : cmds) {
            std::string a = run_capture(c), b = run_capture(c);
            ++runs;
            differ += a != b;
            failed += a.find("<status 0>") == std::string::npos;
        }
        std::string outs[2];
        for (int k = 0; k < 2; ++k) {
            fs::path svg = work / (f.stem().string() + "_" + std::to_string(k) + ".svg");
            std::string r = run_capture(q + "render " + path + " --cells --wedges --entity r --velocity 1 -o '" +
                                        svg.string() + "'");
            failed += r.find("<status 0>") == std::string::npos;
            outs[k] = read_file(svg);
        }
        ++runs;
        differ += outs[0] != outs[1] || outs[0].empty();
    }
    Outcome o;
    o.pass = !files.empty() && differ == 0 && failed == 0;
    o.detail = std::to_string(files.size()) + " fixtures, " + std::to_string(runs) + " command pairs, " +
               std::to_string(differ) + " differing, " + std::to_string(failed) + " failed";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: acceptance <polyvis-cli> <scene-dir> <work-dir>\n";
        return 2;
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 glass vs grid", criterion1},
        {"2 time intervals vs replay", criterion2},
        {"3 segment structure vs grid", criterion3},
        {"4 velocity queries vs sweep", criterion4},
        {"5 structural invariants", criterion5},
        {"6 segment structure scaling", criterion6},
        {"7 CLI determinism", [&] { return criterion7(argv[1], argv[2], argv[3]); }},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.pass;
        std::cout << "criterion " << name << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
