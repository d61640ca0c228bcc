#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <optional>
#include <ostream>

#include "lfr/errors.hpp"
#include "lfr/export.hpp"
#include "lfr/raytrace.hpp"
#include "lfr/reflector.hpp"
#include "lfr/scene.hpp"
#include "lfr/sweep.hpp"

namespace lfr::cli {

namespace {

struct BuildArgs {
    std::string shape;
    std::optional<double> leg, width, height, stem, bar;
    std::string out;
};

struct ConfigureArgs {
    std::string scene;
    std::string mode;
    int ue = 1;
    double yaw = std::numbers::pi / 4.0;
    std::string out;
};

struct TraceArgs {
    std::size_t rays = 1'000'000;
    int bounces = 5;
    std::string polarization = "te";
};

struct CoverageArgs {
    std::string scene;
    TraceArgs trace;
    std::string out_prefix;
};

struct RssArgs {
    std::vector<std::string> scenes;
    std::vector<std::string> labels;
    std::string mode = "incoherent";
    std::string ues;
    TraceArgs trace;
    std::string out;
};

void add_trace_options(CLI::App* cmd, TraceArgs& t) {
    cmd->add_option("--rays", t.rays, "Number of launched rays")->check(CLI::PositiveNumber);
    cmd->add_option("--bounces", t.bounces, "Maximum reflections per ray")->check(CLI::NonNegativeNumber);
    cmd->add_option("--polarization", t.polarization, "te, tm or unpolarized");
}

TraceOptions make_trace_options(const TraceArgs& t) {
    TraceOptions o;
    o.max_bounces = t.bounces;
    o.polarization = parse_polarization(t.polarization);
    return o;
}

std::string fmt_db(double linear) { return format_db(linear > 0.0 ? 10.0 * std::log10(linear) : -INFINITY); }

int cmd_build(const BuildArgs& a, std::ostream& out) {
    Scene scene;
    if (a.shape == "L") {
        if (a.stem || a.bar) throw ParamError("--stem/--bar apply to the T shape only");
        HallwayLParams p;
        if (a.leg) p.leg_length = *a.leg;
        if (a.width) p.width = *a.width;
        if (a.height) p.height = *a.height;
        scene = build_hallway_L(p);
    } else {
        if (a.leg) throw ParamError("--leg applies to the L shape only");
        HallwayTParams p;
        if (a.stem) p.stem_length = *a.stem;
        if (a.bar) p.bar_length = *a.bar;
        if (a.width) p.width = *a.width;
        if (a.height) p.height = *a.height;
        scene = build_hallway_T(p);
    }
    save_scene_file(scene, a.out);
    out << "wrote " << a.out << ": " << scene.surfaces.size() << " surfaces, " << scene.arrays.size() << " array(s), "
        << scene.ue_positions.size() << " UEs\n";
    return kExitOk;
}

int cmd_configure(const ConfigureArgs& a, std::ostream& out) {
    const Scene scene = load_scene_file(a.scene);
    const ReflectorMode mode = parse_reflector_mode(a.mode);
    const Scene configured = configure_scene(scene, mode, a.ue, a.yaw);
    save_scene_file(configured, a.out);

    std::size_t tiles = 0;
    for (const auto& arr : configured.arrays) tiles += arr.tiles.size();
    out << "mode " << to_string(mode) << ": " << tiles << " tiles configured\n";
    if (mode == ReflectorMode::beamfocus || mode == ReflectorMode::chained) {
        const Vector3 ue = configured.ue_positions[static_cast<std::size_t>(a.ue - 1)];
        double worst = 0.0;
        if (mode == ReflectorMode::beamfocus) {
            for (const auto& arr : configured.arrays) {
                for (const Tile& t : arr.tiles) worst = std::max(worst, specular_miss_distance(t, configured.ap, ue));
            }
        } else {
            const auto& first = configured.arrays[0].tiles;
            const auto& second = configured.arrays[1].tiles;
            for (std::size_t i = 0; i < first.size(); ++i) {
                worst = std::max(worst, chained_miss_distance(first[i], second[i], configured.ap, ue));
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", worst);
        out << "largest forward-trace miss at UE " << a.ue << ": " << buf << " m\n";
    }
    out << "wrote " << a.out << "\n";
    return kExitOk;
}

int cmd_coverage(const CoverageArgs& a, std::ostream& out) {
    const Scene scene = load_scene_file(a.scene);
    CoverageOptions o;
    o.n_rays = a.trace.rays;
    o.trace = make_trace_options(a.trace);
    o.threads = threads_from_env();
    const CoverageMap map = coverage_map(scene, o);

    write_text_file(a.out_prefix + ".csv", coverage_csv(map));
    write_text_file(a.out_prefix + ".pgm", coverage_pgm(map));
    out << "grid " << map.nx << " x " << map.ny << ", " << map.ray_count << " rays\n";
    for (std::size_t k = 0; k < scene.ue_positions.size(); ++k) {
        const Vector3& p = scene.ue_positions[k];
        char buf[96];
        std::snprintf(buf, sizeof buf, "UE %zu (%.2f, %.2f): ", k + 1, p.x, p.y);
        out << buf << "cell " << fmt_db(map.gain_at(p)) << " dB, 3x3 max " << fmt_db(map.neighborhood_max(p))
            << " dB\n";
    }
    out << "wrote " << a.out_prefix << ".csv and " << a.out_prefix << ".pgm\n";
    return kExitOk;
}

std::pair<int, int> parse_ue_range(const std::string& s, int count) {
    if (s.empty()) return {1, count};
    const auto dash = s.find('-');
    try {
        if (dash == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
    } catch (const std::exception&) {
        throw ParamError("bad UE range '" + s + "' (expected N or A-B)");
    }
}

std::vector<std::string> default_labels(const std::vector<Scene>& scenes) {
    if (scenes.size() == 3) {
        return {"none", "simple", scenes[2].arrays.size() == 2 ? "chained" : "beamfocus"};
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < scenes.size(); ++i) labels.push_back("scene" + std::to_string(i + 1));
    return labels;
}

int cmd_rss(const RssArgs& a, std::ostream& out) {
    std::vector<Scene> scenes;
    for (const auto& path : a.scenes) scenes.push_back(load_scene_file(path));
    if (scenes.empty()) throw ParamError("--scenes needs at least one file");
    const std::vector<std::string> labels = a.labels.empty() ? default_labels(scenes) : a.labels;
    if (labels.size() != scenes.size()) throw ParamError("--labels must name every scene");

    std::vector<RssColumn> columns;
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        RssColumn c{labels[i], scenes[i], ReflectorMode::none};
        if (labels[i] == "beamfocus") c.refocus = ReflectorMode::beamfocus;
        if (labels[i] == "chained") c.refocus = ReflectorMode::chained;
        columns.push_back(std::move(c));
    }

    ProbeOptions o;
    o.n_rays = a.trace.rays;
    o.trace = make_trace_options(a.trace);
    o.threads = threads_from_env();
    const auto [first, last] = parse_ue_range(a.ues, static_cast<int>(scenes.front().ue_positions.size()));
    const RssTable table = rss_sweep(scenes.front(), columns, first, last, parse_sum_mode(a.mode), o);
    const std::string csv = rss_table_csv(table);
    write_text_file(a.out, csv);
    out << csv << "wrote " << a.out << "\n";
    return kExitOk;
}

}  // namespace

unsigned threads_from_env() {
    const char* v = std::getenv("APP_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n <= 0) return 0;
    return static_cast<unsigned>(std::min<long>(n, 1024));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear Fresnel reflector ray-tracing simulator", "lfrsim"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build a hallway scene");
    b->add_option("shape", build.shape, "L or T")->required()->check(CLI::IsMember({"L", "T"}));
    b->add_option("--leg", build.leg, "L: length of each leg (m)");
    b->add_option("--stem", build.stem, "T: stem length (m)");
    b->add_option("--bar", build.bar, "T: bar length (m)");
    b->add_option("--width", build.width, "Corridor width (m)");
    b->add_option("--height", build.height, "Ceiling height (m)");
    b->add_option("--out", build.out, "Scene file to write")->required();

    ConfigureArgs configure;
    auto* c = app.add_subcommand("configure", "Set reflector tile orientations");
    c->add_option("--scene", configure.scene, "Input scene file")->required();
    c->add_option("--mode", configure.mode, "none, simple, beamfocus or chained")->required();
    c->add_option("--ue", configure.ue, "UE number to focus on (1-based)");
    c->add_option("--yaw", configure.yaw, "Simple-mode yaw (rad)");
    c->add_option("--out", configure.out, "Scene file to write")->required();

    CoverageArgs coverage;
    auto* v = app.add_subcommand("coverage", "Trace a coverage map");
    v->add_option("--scene", coverage.scene, "Scene file")->required();
    add_trace_options(v, coverage.trace);
    v->add_option("--out-prefix", coverage.out_prefix, "Writes <prefix>.csv and <prefix>.pgm")->required();

    RssArgs rss;
    auto* r = app.add_subcommand("rss", "RSS table at the UE positions");
    r->add_option("--scenes", rss.scenes, "Comma-separated scene files")->required()->delimiter(',');
    r->add_option("--labels", rss.labels, "Comma-separated column labels")->delimiter(',');
    r->add_option("--mode", rss.mode, "coherent or incoherent")->check(CLI::IsMember({"coherent", "incoherent"}));
    r->add_option("--ues", rss.ues, "UE range, e.g. 1-9");
    add_trace_options(r, rss.trace);
    r->add_option("--out", rss.out, "CSV file to write")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (b->parsed()) return cmd_build(build, out);
        if (c->parsed()) return cmd_configure(configure, out);
        if (v->parsed()) return cmd_coverage(coverage, out);
        if (r->parsed()) return cmd_rss(rss, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace lfr::cli
