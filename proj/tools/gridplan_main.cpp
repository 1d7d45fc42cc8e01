// gridplan CLI: plan (single run), bench (experiment matrix), genmap
// (procedural map generator), render (SVG from saved artifacts).
//
// Exit codes: 0 success, 1 configuration/usage error, 2 planning failure
// (no path for plan, or a bench cell with zero successful trials).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gridplan/gridplan.hpp>

namespace {

using namespace gridplan;

std::optional<Point> parse_point(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
        return Point{std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

HeuristicChoice parse_heuristic(const std::string& s) {
    if (s == "manhattan") return HeuristicChoice::manhattan;
    if (s == "euclidean") return HeuristicChoice::euclidean;
    throw std::invalid_argument("heuristic must be manhattan or euclidean");
}

std::vector<Point> load_path_csv(const std::filesystem::path& file) {
    std::vector<Point> pts;
    std::istringstream in(harness::read_file(file));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
        if (auto p = parse_point(line)) pts.push_back(*p);
    }
    return pts;
}

struct PlanArgs {
    std::string map;
    std::string algo = "astar-prm";
    int samples = 1000;
    int k = 10;
    std::uint64_t seed = 0;
    std::string heuristic = "manhattan";
    std::string start, goal;
    bool no_postprocess = false;
    bool postprocess = false;
    std::string out;
};

int cmd_plan(const PlanArgs& args) {
    const AsciiMap map = harness::load_map_file(args.map);
    const std::optional<Point> start = args.start.empty() ? map.start : parse_point(args.start);
    const std::optional<Point> goal = args.goal.empty() ? map.goal : parse_point(args.goal);
    if (!start || !goal) {
        std::cerr << "plan: need --start/--goal (map has no S/G markers)\n";
        return 1;
    }

    PlannerSpec spec;
    spec.algorithm = parse_algorithm(args.algo);
    spec.n_samples = args.samples;
    spec.k_neighbors = args.k;
    spec.seed = args.seed;
    spec.heuristic = parse_heuristic(args.heuristic);
    if (args.no_postprocess) spec.postprocess = false;
    if (args.postprocess) spec.postprocess = true;

    const PlanResult result = plan(map.grid, *start, *goal, spec);
    const PlanReport& rep = result.report;
    std::printf("algorithm=%s success=%d length_m=%.3f time_s=%.4f expansions=%lld "
                "smoothness_deg_per_m=%.4f max_curvature_per_m=%.4f",
                to_string(spec.algorithm), result.path.has_value(),
                result.path ? rep.path_length : 0.0, rep.wall_time, rep.node_expansion,
                rep.smoothness, rep.max_curvature);
    if (rep.connection_rate) std::printf(" connection_rate=%.4f", *rep.connection_rate);
    std::printf("\n");

    if (!args.out.empty()) {
        std::filesystem::create_directories(args.out);
        const std::filesystem::path dir = args.out;
        harness::write_file(dir / "search.csv", search_result_csv(result.search, rep.wall_time));
        if (result.path) harness::write_file(dir / "path.csv", path_csv(*result.path));
        if (result.roadmap) {
            harness::write_file(dir / "vertices.csv", vertex_csv(result.roadmap->vertices));
            harness::write_file(dir / "edges.csv", edge_csv(*result.roadmap));
        }
        std::vector<Path> paths;
        if (result.raw_path) paths.push_back(*result.raw_path);
        if (result.path && result.raw_path &&
            result.path->waypoints != result.raw_path->waypoints)
            paths.push_back(*result.path);
        harness::write_file(dir / "plan.svg",
                            render_svg(map.grid, result.roadmap ? &*result.roadmap : nullptr,
                                       paths));
    }
    return result.path ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D occupancy-grid motion planning benchmark"};
    app.require_subcommand(1);

    // --- plan ---
    PlanArgs plan_args;
    auto* plan_cmd = app.add_subcommand("plan", "run one planner on one map");
    plan_cmd->add_option("--map", plan_args.map, "map file (ASCII or .pgm)")->required();
    plan_cmd->add_option("--algo", plan_args.algo,
                         "dijkstra-grid | astar-grid | prm | astar-prm");
    plan_cmd->add_option("--samples", plan_args.samples, "vertex count |V|");
    plan_cmd->add_option("--k", plan_args.k, "neighbor count k");
    plan_cmd->add_option("--seed", plan_args.seed, "sampling seed");
    plan_cmd->add_option("--heuristic", plan_args.heuristic, "manhattan | euclidean");
    plan_cmd->add_option("--start", plan_args.start, "start as x,y");
    plan_cmd->add_option("--goal", plan_args.goal, "goal as x,y");
    plan_cmd->add_flag("--no-postprocess", plan_args.no_postprocess, "disable shortcut+smooth");
    plan_cmd->add_flag("--postprocess", plan_args.postprocess, "force shortcut+smooth");
    plan_cmd->add_option("--out", plan_args.out, "directory for CSV/SVG artifacts");

    // --- bench ---
    std::string bench_config, bench_out, bench_map, bench_algo, bench_heuristic;
    std::string bench_start, bench_goal;
    int bench_trials = 0, bench_samples = 1000, bench_k = 10;
    std::uint64_t bench_seed = 1;
    bool bench_no_postprocess = false;
    auto* bench_cmd = app.add_subcommand("bench", "run a seeded experiment matrix");
    bench_cmd->add_option("--config", bench_config, "JSON experiment config");
    bench_cmd->add_option("--out", bench_out, "output directory (overrides config)");
    bench_cmd->add_option("--map", bench_map, "map file for a single-cell run (no config)");
    bench_cmd->add_option("--algo", bench_algo, "algorithm for a single-cell run");
    bench_cmd->add_option("--samples", bench_samples, "vertex count for a single-cell run");
    bench_cmd->add_option("--k", bench_k, "neighbor count for a single-cell run");
    bench_cmd->add_option("--trials", bench_trials, "trial count");
    bench_cmd->add_option("--seed", bench_seed, "base seed");
    bench_cmd->add_option("--heuristic", bench_heuristic, "manhattan | euclidean");
    bench_cmd->add_option("--start", bench_start, "start as x,y (default: map S marker)");
    bench_cmd->add_option("--goal", bench_goal, "goal as x,y (default: map G marker)");
    bench_cmd->add_flag("--no-postprocess", bench_no_postprocess, "disable shortcut+smooth");

    // --- genmap ---
    int gen_width = 897, gen_height = 550;
    std::uint64_t gen_seed = 1;
    double gen_density = 0.2;
    std::string gen_out, gen_format = "ascii";
    auto* gen_cmd = app.add_subcommand("genmap", "generate a warehouse-style map");
    gen_cmd->add_option("--width", gen_width, "cells (>= 50)");
    gen_cmd->add_option("--height", gen_height, "cells (>= 50)");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--density", gen_density, "blocked fraction in [0, 0.4]");
    gen_cmd->add_option("--format", gen_format, "ascii | pgm");
    gen_cmd->add_option("--out", gen_out, "output file")->required();

    // --- render ---
    std::string render_map, render_vertices, render_edges, render_out;
    std::vector<std::string> render_paths;
    auto* render_cmd = app.add_subcommand("render", "render saved artifacts to SVG");
    render_cmd->add_option("--map", render_map, "map file")->required();
    render_cmd->add_option("--vertices", render_vertices, "vertices.csv from plan --out");
    render_cmd->add_option("--edges", render_edges, "edges.csv from plan --out");
    render_cmd->add_option("--path", render_paths, "path.csv (repeatable)");
    render_cmd->add_option("--out", render_out, "output SVG file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan_cmd) return cmd_plan(plan_args);

        if (*bench_cmd) {
            harness::ExperimentConfig cfg;
            if (!bench_config.empty()) {
                cfg = harness::config_from_file(bench_config);
            } else if (!bench_map.empty() && !bench_algo.empty()) {
                cfg.map_source.path = bench_map;
                cfg.matrix.push_back({parse_algorithm(bench_algo), bench_samples, bench_k});
            } else {
                std::cerr << "bench: need --config, or --map with --algo\n";
                return 1;
            }
            if (!bench_out.empty()) cfg.output_dir = bench_out;
            if (bench_trials > 0) cfg.n_trials = bench_trials;
            if (bench_seed != 1) cfg.base_seed = bench_seed;
            if (!bench_heuristic.empty()) cfg.heuristic = parse_heuristic(bench_heuristic);
            if (!bench_start.empty()) cfg.start = parse_point(bench_start);
            if (!bench_goal.empty()) cfg.goal = parse_point(bench_goal);
            if (bench_no_postprocess) cfg.postprocess = false;
            const auto outcome = harness::run_experiment(cfg);
            std::printf("wrote %s (trials.csv, aggregates.csv, tables.md, SVGs)\n",
                        outcome.dir.string().c_str());
            return outcome.exit_code;
        }

        if (*gen_cmd) {
            const OccupancyGrid grid = generate_warehouse(gen_width, gen_height, gen_seed,
                                                          gen_density);
            const auto a = warehouse_anchors(gen_width, gen_height);
            std::string text;
            if (gen_format == "pgm") {
                text = save_pgm(grid);
            } else {
                // Embed the anchors so plan/bench pick up start and goal.
                text = save_ascii(grid);
                const std::size_t stride = static_cast<std::size_t>(grid.width) + 1;
                text[a.sy * stride + a.sx] = 'S';
                text[a.gy * stride + a.gx] = 'G';
            }
            harness::write_file(gen_out, text);
            std::printf("wrote %s (%dx%d, blocked %.1f%%); start (%d.5,%d.5) goal "
                        "(%d.5,%d.5)\n",
                        gen_out.c_str(), grid.width, grid.height,
                        100.0 * grid.blocked_count() / grid.cells.size(), a.sx, a.sy, a.gx,
                        a.gy);
            return 0;
        }

        if (*render_cmd) {
            const AsciiMap map = harness::load_map_file(render_map);
            Roadmap rm;
            bool have_roadmap = false;
            if (!render_vertices.empty()) {
                std::istringstream in(harness::read_file(render_vertices));
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || line.rfind("index,", 0) == 0) continue;
                    const auto c1 = line.find(',');
                    const auto c2 = line.find(',', c1 + 1);
                    const auto c3 = line.find(',', c2 + 1);
                    rm.vertices.points.push_back({std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                                                  std::stod(line.substr(c2 + 1, c3 - c2 - 1))});
                    rm.vertices.tags.push_back(Provenance::global);
                }
                have_roadmap = true;
            }
            if (!render_edges.empty() && have_roadmap) {
                std::istringstream in(harness::read_file(render_edges));
                std::string line;
                while (std::getline(in, line)) {
                    if (line.empty() || line.rfind("u,", 0) == 0) continue;
                    const auto c1 = line.find(',');
                    const auto c2 = line.find(',', c1 + 1);
                    Edge e;
                    e.u = std::stoi(line.substr(0, c1));
                    e.v = std::stoi(line.substr(c1 + 1, c2 - c1 - 1));
                    e.weight = std::stod(line.substr(c2 + 1));
                    rm.edges.push_back(e);
                }
            }
            std::vector<Path> paths;
            for (const auto& f : render_paths) paths.push_back(make_path(load_path_csv(f)));
            harness::write_file(render_out,
                                render_svg(map.grid, have_roadmap ? &rm : nullptr, paths));
            std::printf("wrote %s\n", render_out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
