#pragma once
// Experiment runner: load or generate a map, run a (algorithm, n_samples, k)
// matrix with seeded trials, aggregate with trimmed statistics, and write
// trials.csv, aggregates.csv, tables.md, per-cell SVGs, and the resolved
// config.
//
// Reproducibility contract: trial i of a cell runs with seed base_seed + i
// and every non-timing CSV column is a pure function of (map, start, goal,
// cell, seed). The time_s column is wall-clock and non-deterministic; the
// CSV marks it as such in a leading comment line. Trials are independent
// jobs executed concurrently and merged in seed order, so results do not
// depend on scheduling.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gridplan/metrics.hpp"
#include "gridplan/planners.hpp"
#include "gridplan/svg.hpp"

namespace gridplan::harness {

using nlohmann::json;

struct GeneratorParams {
    int width = 897;
    int height = 550;
    std::uint64_t seed = 1;
    double obstacle_density = 0.2;
};

// Either a map file (ASCII or .pgm) or generator parameters.
struct MapSource {
    std::string path;
    std::optional<GeneratorParams> generator;
};

struct MatrixCell {
    Algorithm algorithm = Algorithm::astar_prm;
    int n_samples = 1000;
    int k_neighbors = 10;
};

struct ExperimentConfig {
    MapSource map_source;
    std::optional<Point> start;
    std::optional<Point> goal;
    std::vector<MatrixCell> matrix;
    int n_trials = 12;
    std::uint64_t base_seed = 1;
    std::string output_dir = "out";
    HeuristicChoice heuristic = HeuristicChoice::manhattan;
    std::optional<bool> postprocess;
    SmoothingConfig smoothing;
    int jobs = 0;  // max concurrent trials; 0 = hardware concurrency
};

// ---------------- file helpers ----------------

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

// Loads a map file; PGM by extension, ASCII otherwise.
inline AsciiMap load_map_file(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (path.extension() == ".pgm") return AsciiMap{load_pgm(bytes), {}, {}};
    return load_ascii(bytes);
}

inline AsciiMap resolve_map(const MapSource& src) {
    if (src.generator) {
        const GeneratorParams& g = *src.generator;
        AsciiMap m;
        m.grid = generate_warehouse(g.width, g.height, g.seed, g.obstacle_density);
        const auto a = warehouse_anchors(g.width, g.height);
        m.start = Point{a.sx + 0.5, a.sy + 0.5};
        m.goal = Point{a.gx + 0.5, a.gy + 0.5};
        return m;
    }
    return load_map_file(src.path);
}

// ---------------- JSON config ----------------

inline ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (!j.contains("map_source")) throw std::invalid_argument("config: missing map_source");
    const auto& ms = j.at("map_source");
    if (ms.is_string()) {
        cfg.map_source.path = ms.get<std::string>();
    } else if (ms.is_object()) {
        GeneratorParams g;
        g.width = ms.value("width", g.width);
        g.height = ms.value("height", g.height);
        g.seed = ms.value("seed", g.seed);
        g.obstacle_density = ms.value("obstacle_density", g.obstacle_density);
        cfg.map_source.generator = g;
    } else {
        throw std::invalid_argument("config: map_source must be a path or an object");
    }
    const auto point_of = [](const json& a) {
        if (!a.is_array() || a.size() != 2) throw std::invalid_argument("config: point must be [x, y]");
        return Point{a[0].get<double>(), a[1].get<double>()};
    };
    if (j.contains("start")) cfg.start = point_of(j.at("start"));
    if (j.contains("goal")) cfg.goal = point_of(j.at("goal"));
    if (!j.contains("matrix") || !j.at("matrix").is_array() || j.at("matrix").empty())
        throw std::invalid_argument("config: matrix must be a non-empty array");
    for (const auto& c : j.at("matrix")) {
        MatrixCell cell;
        cell.algorithm = parse_algorithm(c.at("algorithm").get<std::string>());
        cell.n_samples = c.value("n_samples", cell.n_samples);
        cell.k_neighbors = c.value("k_neighbors", cell.k_neighbors);
        cfg.matrix.push_back(cell);
    }
    cfg.n_trials = j.value("n_trials", cfg.n_trials);
    if (cfg.n_trials < 3) throw std::invalid_argument("config: n_trials must be >= 3");
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    if (j.contains("heuristic")) {
        const std::string h = j.at("heuristic").get<std::string>();
        if (h == "manhattan") cfg.heuristic = HeuristicChoice::manhattan;
        else if (h == "euclidean") cfg.heuristic = HeuristicChoice::euclidean;
        else throw std::invalid_argument("config: heuristic must be manhattan or euclidean");
    }
    if (j.contains("postprocess")) cfg.postprocess = j.at("postprocess").get<bool>();
    if (j.contains("smoothing")) {
        const auto& s = j.at("smoothing");
        cfg.smoothing.iterations = s.value("iterations", cfg.smoothing.iterations);
        cfg.smoothing.corner_ratio = s.value("corner_ratio", cfg.smoothing.corner_ratio);
        cfg.smoothing.collision_step = s.value("collision_step", cfg.smoothing.collision_step);
    }
    return cfg;
}

inline ExperimentConfig config_from_file(const std::filesystem::path& path) {
    return config_from_json(json::parse(read_file(path)));
}

inline json config_to_json(const ExperimentConfig& cfg) {
    json j;
    if (cfg.map_source.generator) {
        const auto& g = *cfg.map_source.generator;
        j["map_source"] = {{"width", g.width},
                           {"height", g.height},
                           {"seed", g.seed},
                           {"obstacle_density", g.obstacle_density}};
    } else {
        j["map_source"] = cfg.map_source.path;
    }
    if (cfg.start) j["start"] = {cfg.start->x, cfg.start->y};
    if (cfg.goal) j["goal"] = {cfg.goal->x, cfg.goal->y};
    j["matrix"] = json::array();
    for (const auto& c : cfg.matrix)
        j["matrix"].push_back({{"algorithm", to_string(c.algorithm)},
                               {"n_samples", c.n_samples},
                               {"k_neighbors", c.k_neighbors}});
    j["n_trials"] = cfg.n_trials;
    j["base_seed"] = cfg.base_seed;
    j["output_dir"] = cfg.output_dir;
    j["heuristic"] = to_string(cfg.heuristic);
    if (cfg.postprocess) j["postprocess"] = *cfg.postprocess;
    j["smoothing"] = {{"iterations", cfg.smoothing.iterations},
                      {"corner_ratio", cfg.smoothing.corner_ratio},
                      {"collision_step", cfg.smoothing.collision_step}};
    return j;
}

// ---------------- trial rows ----------------

struct TrialRow {
    int trial_id = 0;
    Algorithm algorithm = Algorithm::astar_prm;
    int n_samples = 0;
    int k = 0;
    std::uint64_t seed = 0;
    bool success = false;
    double path_length_m = 0.0;
    double time_s = 0.0;
    long long node_expansion = 0;
    double smoothness_deg_per_m = 0.0;
    double max_curvature_per_m = 0.0;
    std::optional<double> connection_rate;
};

inline const char* trial_csv_comment() {
    return "# time_s is wall-clock and non-deterministic; every other column reproduces "
           "from (map, start, goal, algorithm, n_samples, k, seed)\n";
}

inline const char* trial_csv_header() {
    return "trial_id,algorithm,n_samples,k,seed,success,path_length_m,time_s,node_expansion,"
           "smoothness_deg_per_m,max_curvature_per_m,connection_rate\n";
}

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_trial_row(const TrialRow& r) {
    std::string out;
    char head[160];
    std::snprintf(head, sizeof head, "%d,%s,%d,%d,%llu,%d,", r.trial_id,
                  to_string(r.algorithm), r.n_samples, r.k,
                  static_cast<unsigned long long>(r.seed), r.success ? 1 : 0);
    out += head;
    out += r.success ? format_g17(r.path_length_m) : std::string();
    char mid[48];
    std::snprintf(mid, sizeof mid, ",%.6f,%lld,", r.time_s, r.node_expansion);
    out += mid;
    out += r.success ? format_g17(r.smoothness_deg_per_m) : std::string();
    out += ',';
    out += r.success ? format_g17(r.max_curvature_per_m) : std::string();
    out += ',';
    if (r.connection_rate) out += format_g17(*r.connection_rate);
    out += '\n';
    return out;
}

inline PlannerSpec make_spec(const MatrixCell& cell, std::uint64_t seed,
                             const ExperimentConfig& cfg) {
    PlannerSpec spec;
    spec.algorithm = cell.algorithm;
    spec.n_samples = cell.n_samples;
    spec.k_neighbors = cell.k_neighbors;
    spec.heuristic = cfg.heuristic;
    spec.seed = seed;
    spec.smoothing = cfg.smoothing;
    spec.postprocess = cfg.postprocess;
    return spec;
}

inline std::pair<TrialRow, PlanResult> run_single_trial(const OccupancyGrid& grid, Point start,
                                                        Point goal, const MatrixCell& cell,
                                                        int trial_id, std::uint64_t seed,
                                                        const ExperimentConfig& cfg) {
    PlanResult result = plan(grid, start, goal, make_spec(cell, seed, cfg));
    TrialRow row;
    row.trial_id = trial_id;
    row.algorithm = cell.algorithm;
    row.n_samples = is_sampling_planner(cell.algorithm) ? cell.n_samples : 0;
    row.k = is_sampling_planner(cell.algorithm) ? cell.k_neighbors : 0;
    row.seed = seed;
    row.success = result.path.has_value();
    row.time_s = result.report.wall_time;
    row.node_expansion = result.report.node_expansion;
    row.connection_rate = result.report.connection_rate;
    if (row.success) {
        row.path_length_m = result.report.path_length;
        row.smoothness_deg_per_m = result.report.smoothness;
        row.max_curvature_per_m = result.report.max_curvature;
    }
    return {row, std::move(result)};
}

// ---------------- experiment ----------------

struct CellResult {
    MatrixCell cell;
    std::vector<TrialRow> rows;
    int n_success = 0;
    std::optional<TrialAggregate> agg;  // over successful trials, when >= 3
};

struct ExperimentOutcome {
    int exit_code = 0;  // 0 ok, 2 when some cell had zero successes
    std::filesystem::path dir;
    std::vector<CellResult> cells;
};

namespace detail {

inline PlanReport report_of(const TrialRow& r) {
    PlanReport rep;
    rep.path_length = r.path_length_m;
    rep.wall_time = r.time_s;
    rep.node_expansion = r.node_expansion;
    rep.smoothness = r.smoothness_deg_per_m;
    rep.max_curvature = r.max_curvature_per_m;
    rep.connection_rate = r.connection_rate;
    return rep;
}

inline std::string aggregates_csv_header() {
    return "algorithm,n_samples,k,n_trials,n_success,path_length_mean,path_length_std,"
           "time_mean,time_std,expansion_mean,expansion_std,smoothness_mean,smoothness_std,"
           "max_curvature_mean,max_curvature_std,connection_rate_mean,connection_rate_std,"
           "fluctuation_pct\n";
}

inline std::string aggregates_csv_row(const CellResult& c) {
    std::string out = std::string(to_string(c.cell.algorithm)) + "," +
                      std::to_string(c.cell.n_samples) + "," +
                      std::to_string(c.cell.k_neighbors) + "," +
                      std::to_string(static_cast<int>(c.rows.size())) + "," +
                      std::to_string(c.n_success);
    const auto stat = [&](const MetricStat& s) {
        return "," + format_g17(s.mean) + "," + format_g17(s.stddev);
    };
    if (c.agg) {
        out += stat(c.agg->path_length) + stat(c.agg->wall_time) + stat(c.agg->node_expansion) +
               stat(c.agg->smoothness) + stat(c.agg->max_curvature);
        out += c.agg->connection_rate ? stat(*c.agg->connection_rate) : std::string(",,");
        out += "," + format_g17(c.agg->fluctuation_pct);
    } else {
        out += ",,,,,,,,,,,,,";
    }
    return out + "\n";
}

inline std::string tables_markdown(const std::vector<CellResult>& cells) {
    std::string md = "# Benchmark results\n";
    const auto fmt2 = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    // Core indicator table per (n_samples, k) group, grid planners included
    // in every group they were run with.
    std::vector<std::pair<int, int>> groups;
    for (const auto& c : cells) {
        const std::pair<int, int> g{c.cell.n_samples, c.cell.k_neighbors};
        if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
    }
    for (const auto& [n, k] : groups) {
        md += "\n## Core indicators (|V|=" + std::to_string(n) + ", k=" + std::to_string(k) +
              ")\n\n";
        md += "| Algorithm | Path Length (m) | Execution Time (s) | Node Expansion | "
              "Path Smoothness (deg/m) | Success |\n";
        md += "|---|---|---|---|---|---|\n";
        for (const auto& c : cells) {
            if (c.cell.n_samples != n || c.cell.k_neighbors != k) continue;
            md += std::string("| ") + to_string(c.cell.algorithm) + " | ";
            if (c.agg) {
                md += fmt2(c.agg->path_length.mean) + " | " + fmt2(c.agg->wall_time.mean) +
                      " | " + fmt2(c.agg->node_expansion.mean) + " | " +
                      fmt2(c.agg->smoothness.mean) + " | ";
            } else {
                md += "- | - | - | - | ";
            }
            md += std::to_string(c.n_success) + "/" + std::to_string(c.rows.size()) + " |\n";
        }
    }
    md += "\n## Stability and topology\n\n";
    md += "| Algorithm | \\|V\\| | k | Path Fluctuation (%) | Max Curvature Mean (1/m) | "
          "Effective Connection Rate |\n";
    md += "|---|---|---|---|---|---|\n";
    for (const auto& c : cells) {
        const bool sampling = is_sampling_planner(c.cell.algorithm);
        md += std::string("| ") + to_string(c.cell.algorithm) + " | " +
              (sampling ? std::to_string(c.cell.n_samples) : "-") + " | " +
              (sampling ? std::to_string(c.cell.k_neighbors) : "-") + " | ";
        if (c.agg) {
            md += fmt2(c.agg->fluctuation_pct) + " | " + fmt2(c.agg->max_curvature.mean) + " | ";
            if (c.agg->connection_rate)
                md += fmt2(100.0 * c.agg->connection_rate->mean) + "% |\n";
            else
                md += "- |\n";
        } else {
            md += "- | - | - |\n";
        }
    }
    return md;
}

}  // namespace detail

inline ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    if (cfg.matrix.empty()) throw std::invalid_argument("run_experiment: empty matrix");
    if (cfg.n_trials < 3) throw std::invalid_argument("run_experiment: n_trials must be >= 3");

    const AsciiMap map = resolve_map(cfg.map_source);
    const OccupancyGrid& grid = map.grid;
    const Point start = cfg.start ? *cfg.start : map.start.value_or(Point{0.5, 0.5});
    const Point goal =
        cfg.goal ? *cfg.goal
                 : map.goal.value_or(Point{grid.width - 0.5, grid.height - 0.5});
    if (!is_free(grid, start) || !is_free(grid, goal))
        throw std::invalid_argument("run_experiment: start/goal blocked or out of bounds");

    ExperimentOutcome outcome;
    outcome.dir = cfg.output_dir;
    std::filesystem::create_directories(outcome.dir);

    std::string trials_csv = trial_csv_comment();
    trials_csv += trial_csv_header();

    for (const MatrixCell& cell : cfg.matrix) {
        CellResult cr;
        cr.cell = cell;

        // Independent trials; at most `jobs` in flight, futures collected in
        // seed order so the merged output is scheduling-independent.
        const int jobs = cfg.jobs > 0
                             ? cfg.jobs
                             : std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::future<std::pair<TrialRow, PlanResult>>> futures(cfg.n_trials);
        int launched = 0;
        const auto launch_up_to = [&](int limit) {
            for (; launched < limit && launched < cfg.n_trials; ++launched) {
                const int t = launched;
                futures[t] = std::async(std::launch::async, [&, t] {
                    return run_single_trial(grid, start, goal, cell, t, cfg.base_seed + t, cfg);
                });
            }
        };
        launch_up_to(jobs);
        std::optional<PlanResult> svg_source;
        for (int t = 0; t < cfg.n_trials; ++t) {
            auto [row, result] = futures[t].get();
            launch_up_to(launched + 1);
            if (row.success) {
                ++cr.n_success;
                if (!svg_source) svg_source = std::move(result);
            }
            trials_csv += format_trial_row(row);
            cr.rows.push_back(row);
        }

        std::vector<PlanReport> good;
        for (const TrialRow& r : cr.rows)
            if (r.success) good.push_back(detail::report_of(r));
        if (good.size() >= 3) cr.agg = aggregate(good);

        std::string cell_name = std::string(to_string(cell.algorithm)) + "_v" +
                                std::to_string(cell.n_samples) + "_k" +
                                std::to_string(cell.k_neighbors);
        std::vector<Path> paths;
        const Roadmap* rm = nullptr;
        if (svg_source) {
            if (svg_source->raw_path) paths.push_back(*svg_source->raw_path);
            if (svg_source->path && svg_source->path->waypoints != svg_source->raw_path->waypoints)
                paths.push_back(*svg_source->path);
            if (svg_source->roadmap) rm = &*svg_source->roadmap;
        }
        write_file(outcome.dir / (cell_name + ".svg"), render_svg(grid, rm, paths));

        if (cr.n_success == 0) outcome.exit_code = 2;
        outcome.cells.push_back(std::move(cr));
    }

    write_file(outcome.dir / "trials.csv", trials_csv);
    std::string agg_csv = detail::aggregates_csv_header();
    for (const CellResult& c : outcome.cells) agg_csv += detail::aggregates_csv_row(c);
    write_file(outcome.dir / "aggregates.csv", agg_csv);
    write_file(outcome.dir / "tables.md", detail::tables_markdown(outcome.cells));
    write_file(outcome.dir / "config.json", config_to_json(cfg).dump(2) + "\n");
    return outcome;
}

}  // namespace gridplan::harness
