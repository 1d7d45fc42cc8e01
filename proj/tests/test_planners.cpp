#include <catch2/catch_amalgamated.hpp>

#include <gridplan/planners.hpp>

#include "support.hpp"

using namespace gridplan;

TEST_CASE("astar-prm with n=2 reduces to the straight segment") {
    const OccupancyGrid g = OccupancyGrid::all_free(60, 40);
    PlannerSpec spec;
    spec.algorithm = Algorithm::astar_prm;
    spec.n_samples = 2;
    spec.k_neighbors = 5;
    const Point s{5.5, 5.5}, t{54.5, 34.5};
    const PlanResult res = plan(g, s, t, spec);
    REQUIRE(res.path.has_value());
    CHECK(res.report.path_length == Catch::Approx(euclidean(s, t)).margin(1e-9));
    CHECK(res.path->waypoints.front() == s);
    CHECK(res.path->waypoints.back() == t);
}

TEST_CASE("plan is deterministic for a fixed spec") {
    const OccupancyGrid g = generate_warehouse(200, 150, 11, 0.2);
    const auto a = warehouse_anchors(200, 150);
    const Point s{a.sx + 0.5, a.sy + 0.5}, t{a.gx + 0.5, a.gy + 0.5};
    for (Algorithm algo : {Algorithm::prm, Algorithm::astar_prm}) {
        PlannerSpec spec;
        spec.algorithm = algo;
        spec.n_samples = 400;
        spec.k_neighbors = 10;
        spec.seed = 21;
        const PlanResult r1 = plan(g, s, t, spec);
        const PlanResult r2 = plan(g, s, t, spec);
        REQUIRE(r1.path.has_value() == r2.path.has_value());
        if (r1.path) {
            CHECK(r1.path->waypoints == r2.path->waypoints);  // bit-identical
            CHECK(r1.report.path_length == r2.report.path_length);
        }
    }
}

TEST_CASE("returned paths survive a full collision re-validation") {
    // Tight map with a real chokepoint: a handful of trials may fail to
    // connect (the planner returns none rather than resampling), but every
    // returned path must re-validate.
    const OccupancyGrid g = generate_warehouse(250, 180, 31, 0.25);
    const auto a = warehouse_anchors(g.width, g.height);
    const Point s{a.sx + 0.5, a.sy + 0.5}, t{a.gx + 0.5, a.gy + 0.5};
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        PlannerSpec spec;
        spec.algorithm = Algorithm::astar_prm;
        spec.n_samples = 1000;
        spec.k_neighbors = 10;
        spec.seed = seed;
        const PlanResult res = plan(g, s, t, spec);
        if (!res.path) continue;
        ++successes;
        CHECK(res.path->waypoints.front() == s);
        CHECK(res.path->waypoints.back() == t);
        // Re-check at half the planning step.
        CHECK(testsupport::path_is_collision_free(g, *res.path, 0.25));
        CHECK(testsupport::path_is_collision_free(g, *res.raw_path, 0.25));
    }
    CHECK(successes >= 6);
}

TEST_CASE("pre-postprocess cost is optimal on the sampled roadmap") {
    const OccupancyGrid g = generate_warehouse(200, 150, 41, 0.2);
    const auto a = warehouse_anchors(g.width, g.height);
    const Point s{a.sx + 0.5, a.sy + 0.5}, t{a.gx + 0.5, a.gy + 0.5};
    PlannerSpec spec;
    spec.algorithm = Algorithm::astar_prm;
    spec.n_samples = 300;
    spec.k_neighbors = 8;
    spec.seed = 5;
    const PlanResult res = plan(g, s, t, spec);
    REQUIRE(res.path.has_value());
    REQUIRE(res.roadmap.has_value());
    const SearchResult oracle = graph_dijkstra(*res.roadmap, 0, 1);
    CHECK(res.search.cost == Catch::Approx(oracle.cost).margin(1e-9));
    CHECK(res.raw_path->total_length == Catch::Approx(oracle.cost).margin(1e-9));
}

TEST_CASE("node_expansion bookkeeping per planner family") {
    const OccupancyGrid g = generate_warehouse(150, 120, 51, 0.15);
    const auto a = warehouse_anchors(g.width, g.height);
    const Point s{a.sx + 0.5, a.sy + 0.5}, t{a.gx + 0.5, a.gy + 0.5};

    for (Algorithm algo : {Algorithm::prm, Algorithm::astar_prm}) {
        PlannerSpec spec;
        spec.algorithm = algo;
        spec.n_samples = 321;
        spec.k_neighbors = 10;
        const PlanResult res = plan(g, s, t, spec);
        CHECK(res.report.node_expansion == 321);  // |V| exactly
        CHECK(res.report.connection_rate.has_value());
        CHECK(*res.report.connection_rate > 0.0);
        CHECK(*res.report.connection_rate <= 1.0);
    }
    for (Algorithm algo : {Algorithm::dijkstra_grid, Algorithm::astar_grid}) {
        PlannerSpec spec;
        spec.algorithm = algo;
        const PlanResult res = plan(g, s, t, spec);
        REQUIRE(res.path.has_value());
        CHECK(res.report.node_expansion == res.search.expanded);  // frontier pops
        CHECK_FALSE(res.report.connection_rate.has_value());
    }
}

TEST_CASE("grid planners respect the postprocess flag") {
    const OccupancyGrid g = OccupancyGrid::all_free(100, 80);
    const Point s{5.5, 5.5}, t{94.5, 74.5};
    PlannerSpec spec;
    spec.algorithm = Algorithm::astar_grid;
    const PlanResult raw = plan(g, s, t, spec);  // default: no postprocess
    REQUIRE(raw.path.has_value());
    CHECK(raw.path->waypoints == raw.raw_path->waypoints);

    spec.postprocess = true;
    const PlanResult cut = plan(g, s, t, spec);
    REQUIRE(cut.path.has_value());
    CHECK(cut.path->waypoints.size() == 2);  // all-free: shortcut to the chord
    CHECK(cut.report.path_length == Catch::Approx(euclidean(s, t)).margin(1e-9));
}

TEST_CASE("degenerate start == goal yields a zero-length path") {
    const OccupancyGrid g = OccupancyGrid::all_free(50, 50);
    PlannerSpec spec;
    spec.algorithm = Algorithm::astar_prm;
    const PlanResult res = plan(g, {7.5, 7.5}, {7.5, 7.5}, spec);
    REQUIRE(res.path.has_value());
    CHECK(res.path->total_length == 0.0);
    CHECK(res.report.path_length == 0.0);
}

TEST_CASE("disconnected maps fail cleanly with a populated report") {
    // A full vertical wall: no path can exist.
    std::string text;
    for (int y = 0; y < 60; ++y) {
        std::string row(80, '.');
        row[40] = '#';
        text += row + "\n";
    }
    const AsciiMap m = load_ascii(text);
    const Point s{5.5, 30.5}, t{74.5, 30.5};

    PlannerSpec spec;
    spec.algorithm = Algorithm::prm;
    spec.n_samples = 200;
    spec.k_neighbors = 6;
    const PlanResult res = plan(m.grid, s, t, spec);
    CHECK_FALSE(res.path.has_value());
    CHECK(res.report.node_expansion == 200);
    CHECK(res.report.connection_rate.has_value());
    CHECK(res.report.wall_time >= 0.0);

    spec.algorithm = Algorithm::astar_grid;
    const PlanResult grid_res = plan(m.grid, s, t, spec);
    CHECK_FALSE(grid_res.path.has_value());
    CHECK(grid_res.report.node_expansion > 0);

    CHECK_THROWS_AS(plan(m.grid, {40.5, 30.5}, t, spec), std::invalid_argument);
}

TEST_CASE("algorithm names round-trip") {
    for (Algorithm a : {Algorithm::dijkstra_grid, Algorithm::astar_grid, Algorithm::prm,
                        Algorithm::astar_prm})
        CHECK(parse_algorithm(to_string(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("rrt"), std::invalid_argument);
}
