#pragma once
// The four planners behind one interface:
//   dijkstra-grid, astar-grid : search the raster directly
//   prm                       : sample_uniform + connect_fixed_k + graph A*
//   astar-prm                 : sample_stratified + connect_dynamic + graph A*
//                               + shortcut + smooth
//
// Post-processing defaults on for astar-prm and off otherwise; the flag can
// force it either way. Wall time covers planning only (sampling, connection,
// search, post-processing), not map I/O. Everything is deterministic for a
// fixed (grid, start, goal, spec).

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "gridplan/metrics.hpp"
#include "gridplan/postprocess.hpp"
#include "gridplan/roadmap.hpp"
#include "gridplan/sampling.hpp"
#include "gridplan/search.hpp"

namespace gridplan {

enum class Algorithm { dijkstra_grid, astar_grid, prm, astar_prm };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::dijkstra_grid: return "dijkstra-grid";
        case Algorithm::astar_grid: return "astar-grid";
        case Algorithm::prm: return "prm";
        case Algorithm::astar_prm: return "astar-prm";
    }
    return "?";
}

inline Algorithm parse_algorithm(const std::string& name) {
    if (name == "dijkstra-grid") return Algorithm::dijkstra_grid;
    if (name == "astar-grid") return Algorithm::astar_grid;
    if (name == "prm") return Algorithm::prm;
    if (name == "astar-prm") return Algorithm::astar_prm;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

inline bool is_sampling_planner(Algorithm a) {
    return a == Algorithm::prm || a == Algorithm::astar_prm;
}

struct PlannerSpec {
    Algorithm algorithm = Algorithm::astar_prm;
    int n_samples = 1000;
    int k_neighbors = 10;
    HeuristicChoice heuristic = HeuristicChoice::manhattan;        // connection guidance
    HeuristicChoice query_heuristic = HeuristicChoice::euclidean;  // roadmap query
    std::uint64_t seed = 0;
    SmoothingConfig smoothing;
    std::optional<bool> postprocess;  // unset = on for astar-prm, off otherwise
    double collision_step = 0.0;      // 0 = half a cell
    int pool_multiplier = 3;
    // Stratified-sampling overrides (unset = scale-relative defaults).
    double core_fraction = 0.70;
    double boundary_subfraction = 0.30;
    std::optional<double> corridor_half_width;
    std::optional<double> delta;

    bool postprocess_enabled() const {
        return postprocess.value_or(algorithm == Algorithm::astar_prm);
    }
};

struct PlanResult {
    std::optional<Path> path;      // post-processed when enabled
    PlanReport report;
    std::optional<Path> raw_path;  // before post-processing
    std::optional<Roadmap> roadmap;
    SearchResult search;
};

inline PlanResult plan(const OccupancyGrid& grid, Point start, Point goal,
                       const PlannerSpec& spec) {
    if (!is_free(grid, start) || !is_free(grid, goal))
        throw std::invalid_argument("plan: start/goal must be free");
    if (is_sampling_planner(spec.algorithm)) {
        if (spec.n_samples < 2) throw std::invalid_argument("plan: n_samples must be >= 2");
        if (spec.k_neighbors < 1) throw std::invalid_argument("plan: k_neighbors must be >= 1");
    }

    PlanResult out;
    if (start == goal) {
        out.path = Path{{start}, 0.0};
        out.raw_path = out.path;
        return out;
    }

    const auto t0 = std::chrono::steady_clock::now();
    switch (spec.algorithm) {
        case Algorithm::dijkstra_grid:
            out.search = grid_dijkstra(grid, start, goal);
            break;
        case Algorithm::astar_grid:
            out.search = grid_astar(grid, start, goal);
            break;
        case Algorithm::prm: {
            VertexSet vs = sample_uniform(grid, spec.n_samples, start, goal, spec.seed);
            out.roadmap = connect_fixed_k(grid, std::move(vs), spec.k_neighbors,
                                          spec.collision_step);
            out.search = graph_astar(*out.roadmap, 0, 1, spec.query_heuristic, goal);
            break;
        }
        case Algorithm::astar_prm: {
            SamplingConfig scfg;
            scfg.n_total = spec.n_samples;
            scfg.core_fraction = spec.core_fraction;
            scfg.boundary_subfraction = spec.boundary_subfraction;
            scfg.corridor_half_width = spec.corridor_half_width;
            scfg.delta = spec.delta;
            scfg.seed = spec.seed;
            VertexSet vs = sample_stratified(grid, scfg, start, goal);
            out.roadmap = connect_dynamic(grid, std::move(vs), spec.k_neighbors, spec.heuristic,
                                          goal, spec.collision_step, spec.pool_multiplier);
            out.search = graph_astar(*out.roadmap, 0, 1, spec.query_heuristic, goal);
            break;
        }
    }

    out.raw_path = out.search.path;
    if (out.raw_path) {
        if (spec.postprocess_enabled()) {
            SmoothingConfig smoothing = spec.smoothing;
            if (smoothing.collision_step == 0.0) smoothing.collision_step = spec.collision_step;
            Path cut = shortcut(grid, *out.raw_path, spec.collision_step);
            out.path = smooth(grid, cut, smoothing);
        } else {
            out.path = out.raw_path;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();

    PlanReport& rep = out.report;
    rep.wall_time = std::chrono::duration<double>(t1 - t0).count();
    rep.node_expansion =
        is_sampling_planner(spec.algorithm) ? spec.n_samples : out.search.expanded;
    if (out.roadmap && out.roadmap->stats.attempted > 0)
        rep.connection_rate = static_cast<double>(out.roadmap->stats.accepted) /
                              static_cast<double>(out.roadmap->stats.attempted);
    if (out.path && out.path->size() >= 2) {
        rep.path_length = path_length(*out.path);
        rep.smoothness = smoothness(*out.path);
        rep.max_curvature = max_curvature(*out.path);
    }
    return out;
}

}  // namespace gridplan
