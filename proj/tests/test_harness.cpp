#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include <gridplan/harness.hpp>

#include "support.hpp"

using namespace gridplan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

harness::ExperimentConfig small_config(const fs::path& out) {
    harness::ExperimentConfig cfg;
    harness::GeneratorParams gen;
    gen.width = 150;
    gen.height = 120;
    gen.seed = 77;
    gen.obstacle_density = 0.2;
    cfg.map_source.generator = gen;
    cfg.matrix = {{Algorithm::astar_grid, 0, 0},
                  {Algorithm::prm, 150, 8},
                  {Algorithm::astar_prm, 150, 8}};
    cfg.n_trials = 4;
    cfg.base_seed = 9;
    cfg.output_dir = out.string();
    return cfg;
}

}  // namespace

TEST_CASE("config JSON round-trip") {
    const auto j = nlohmann::json::parse(R"({
        "map_source": {"width": 200, "height": 150, "seed": 3, "obstacle_density": 0.15},
        "start": [50, 50],
        "goal": [150, 100],
        "matrix": [
            {"algorithm": "prm", "n_samples": 500, "k_neighbors": 10},
            {"algorithm": "astar-prm", "n_samples": 500, "k_neighbors": 10}
        ],
        "n_trials": 12,
        "base_seed": 100,
        "output_dir": "results",
        "heuristic": "manhattan",
        "postprocess": true
    })");
    const harness::ExperimentConfig cfg = harness::config_from_json(j);
    REQUIRE(cfg.map_source.generator.has_value());
    CHECK(cfg.map_source.generator->width == 200);
    CHECK(cfg.start->x == 50);
    CHECK(cfg.goal->y == 100);
    REQUIRE(cfg.matrix.size() == 2);
    CHECK(cfg.matrix[1].algorithm == Algorithm::astar_prm);
    CHECK(cfg.n_trials == 12);
    CHECK(cfg.postprocess == true);

    const harness::ExperimentConfig back = harness::config_from_json(harness::config_to_json(cfg));
    CHECK(back.matrix.size() == cfg.matrix.size());
    CHECK(back.base_seed == cfg.base_seed);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(harness::config_from_json(nlohmann::json::object()),
                    std::invalid_argument);
    CHECK_THROWS_AS(harness::config_from_json(nlohmann::json::parse(
                        R"({"map_source": "m.txt", "matrix": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(harness::config_from_json(nlohmann::json::parse(
                        R"({"map_source": "m.txt",
                            "matrix": [{"algorithm": "prm"}], "n_trials": 2})")),
                    std::invalid_argument);
}

TEST_CASE("run_experiment writes the full artifact set") {
    TempDir tmp("gridplan_harness_full");
    const auto outcome = harness::run_experiment(small_config(tmp.path));
    CHECK(outcome.exit_code == 0);
    CHECK(fs::exists(tmp.path / "trials.csv"));
    CHECK(fs::exists(tmp.path / "aggregates.csv"));
    CHECK(fs::exists(tmp.path / "tables.md"));
    CHECK(fs::exists(tmp.path / "config.json"));
    CHECK(fs::exists(tmp.path / "astar-grid_v0_k0.svg"));
    CHECK(fs::exists(tmp.path / "prm_v150_k8.svg"));
    CHECK(fs::exists(tmp.path / "astar-prm_v150_k8.svg"));

    const auto lines = csv_lines(harness::read_file(tmp.path / "trials.csv"));
    CHECK(lines.size() == 1 + 3 * 4);  // header + cells * trials
    CHECK(lines[0] + "\n" == harness::trial_csv_header());

    // Aggregates recompute from the CSV rows (the seed ledger has enough
    // precision to rebuild them exactly).
    const auto agg_lines = csv_lines(harness::read_file(tmp.path / "aggregates.csv"));
    REQUIRE(agg_lines.size() == 4);
    for (const auto& cell : outcome.cells) {
        REQUIRE(cell.agg.has_value());
        std::vector<PlanReport> reports;
        for (const auto& line : lines) {
            const auto cols = split_csv(line);
            if (cols[0] == "trial_id" || cols[1] != to_string(cell.cell.algorithm)) continue;
            if (cols[5] != "1") continue;
            PlanReport r;
            r.path_length = std::stod(cols[6]);
            r.wall_time = std::stod(cols[7]);
            r.node_expansion = std::stoll(cols[8]);
            r.smoothness = std::stod(cols[9]);
            r.max_curvature = std::stod(cols[10]);
            if (!cols[11].empty()) r.connection_rate = std::stod(cols[11]);
            reports.push_back(r);
        }
        REQUIRE(reports.size() >= 3);
        const TrialAggregate recomputed = aggregate(reports);
        CHECK(recomputed.path_length.mean ==
              Catch::Approx(cell.agg->path_length.mean).margin(1e-9));
        CHECK(recomputed.path_length.stddev ==
              Catch::Approx(cell.agg->path_length.stddev).margin(1e-9));
        CHECK(recomputed.fluctuation_pct ==
              Catch::Approx(cell.agg->fluctuation_pct).margin(1e-9));
    }

    const std::string svg = harness::read_file(tmp.path / "astar-prm_v150_k8.svg");
    CHECK(testsupport::xml_well_formed(svg));
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("experiment is reproducible modulo the timing column") {
    TempDir tmp_a("gridplan_harness_rep_a");
    TempDir tmp_b("gridplan_harness_rep_b");
    auto cfg_a = small_config(tmp_a.path);
    auto cfg_b = small_config(tmp_b.path);
    harness::run_experiment(cfg_a);
    harness::run_experiment(cfg_b);
    const auto rows_a = csv_lines(harness::read_file(tmp_a.path / "trials.csv"));
    const auto rows_b = csv_lines(harness::read_file(tmp_b.path / "trials.csv"));
    REQUIRE(rows_a.size() == rows_b.size());
    for (std::size_t i = 0; i < rows_a.size(); ++i) {
        auto cols_a = split_csv(rows_a[i]);
        auto cols_b = split_csv(rows_b[i]);
        REQUIRE(cols_a.size() == cols_b.size());
        for (std::size_t c = 0; c < cols_a.size(); ++c) {
            if (c == 7) continue;  // time_s is wall-clock
            CHECK(cols_a[c] == cols_b[c]);
        }
    }
}

TEST_CASE("single trials rerun byte-exactly from their recorded seed") {
    TempDir tmp("gridplan_harness_seed");
    const auto cfg = small_config(tmp.path);
    harness::run_experiment(cfg);

    const AsciiMap map = harness::resolve_map(cfg.map_source);
    const Point start = *map.start;
    const Point goal = *map.goal;

    const auto rows = csv_lines(harness::read_file(tmp.path / "trials.csv"));
    int reran = 0;
    for (const auto& line : rows) {
        const auto cols = split_csv(line);
        if (cols[0] == "trial_id") continue;
        harness::MatrixCell cell;
        cell.algorithm = parse_algorithm(cols[1]);
        cell.n_samples = cols[2] == "0" ? 150 : std::stoi(cols[2]);
        cell.k_neighbors = cols[3] == "0" ? 8 : std::stoi(cols[3]);
        const auto [row, result] = harness::run_single_trial(
            map.grid, start, goal, cell, std::stoi(cols[0]), std::stoull(cols[4]), cfg);
        std::string formatted = harness::format_trial_row(row);
        if (!formatted.empty() && formatted.back() == '\n') formatted.pop_back();
        const auto fresh = split_csv(formatted);
        REQUIRE(fresh.size() == cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == 7) continue;
            CHECK(fresh[c] == cols[c]);
        }
        ++reran;
    }
    CHECK(reran == 12);
}

TEST_CASE("a cell with zero successes sets exit code 2") {
    TempDir tmp("gridplan_harness_fail");
    // Walled map: planner cannot succeed.
    std::string text;
    for (int y = 0; y < 40; ++y) {
        std::string row(60, '.');
        row[30] = '#';
        text += row + "\n";
    }
    harness::write_file(tmp.path / "wall.txt", text);
    harness::ExperimentConfig cfg;
    cfg.map_source.path = (tmp.path / "wall.txt").string();
    cfg.start = Point{5.5, 20.5};
    cfg.goal = Point{54.5, 20.5};
    cfg.matrix = {{Algorithm::prm, 60, 5}};
    cfg.n_trials = 3;
    cfg.output_dir = (tmp.path / "out").string();
    const auto outcome = harness::run_experiment(cfg);
    CHECK(outcome.exit_code == 2);
    CHECK(outcome.cells[0].n_success == 0);
    CHECK_FALSE(outcome.cells[0].agg.has_value());
}

TEST_CASE("startup errors throw before any trial runs") {
    harness::ExperimentConfig cfg;
    cfg.map_source.path = "/nonexistent/map.txt";
    cfg.matrix = {{Algorithm::prm, 10, 3}};
    CHECK_THROWS(harness::run_experiment(cfg));

    harness::ExperimentConfig blocked = small_config(fs::temp_directory_path() / "x");
    blocked.start = Point{-5, -5};
    CHECK_THROWS_AS(harness::run_experiment(blocked), std::invalid_argument);
}

TEST_CASE("render_svg shapes") {
    const OccupancyGrid empty = OccupancyGrid::all_free(20, 10);
    std::vector<Path> one{make_path({{1.5, 1.5}, {18.5, 8.5}})};
    const std::string svg = render_svg(empty, nullptr, one);
    CHECK(testsupport::xml_well_formed(svg));
    CHECK(testsupport::count_occurrences(svg, "<polyline") == 1);
    CHECK(testsupport::count_occurrences(svg, "<rect") == 0);

    // Two blocked runs in one row, one in another: one rect per run.
    AsciiMap m = load_ascii("##.#\n....\n.##.\n");
    const std::string svg2 = render_svg(m.grid, nullptr, std::vector<Path>{});
    CHECK(testsupport::count_occurrences(svg2, "<rect") == 3);
    CHECK(testsupport::xml_well_formed(svg2));
}
