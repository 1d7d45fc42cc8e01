#pragma once
// Path post-processing: redundant-node elimination by line-of-sight
// shortcutting, then collision-safe corner relaxation.
//
// shortcut sweeps greedily: from each kept waypoint it jumps to the farthest
// later waypoint reachable by a collision-free straight segment. Output
// length never exceeds input length and the sweep is idempotent.
//
// smooth relaxes each interior waypoint toward the midpoint of its
// neighbors by corner_ratio per iteration. A move whose two new incident
// segments fail the collision check is rolled back for that corner, and an
// iteration that worsens the °/m smoothness metric is rolled back wholesale
// and stops the pass, so the metric never increases. Endpoints never move.

#include <stdexcept>
#include <vector>

#include "gridplan/collision.hpp"
#include "gridplan/metrics.hpp"
#include "gridplan/search.hpp"

namespace gridplan {

struct SmoothingConfig {
    int iterations = 3;
    double corner_ratio = 0.25;     // pull fraction toward the neighbor midpoint, in (0, 0.5)
    double collision_step = 0.0;    // 0 = half a cell
};

inline Path shortcut(const OccupancyGrid& grid, const Path& path, double collision_step = 0.0) {
    if (path.size() < 3) return path;
    const double step = default_collision_step(grid, collision_step);
    const auto& wp = path.waypoints;
    std::vector<Point> out;
    out.push_back(wp.front());
    std::size_t i = 0;
    while (i + 1 < wp.size()) {
        std::size_t j = wp.size() - 1;
        // The immediate successor is always acceptable: the input path is
        // collision-free edge-wise.
        while (j > i + 1 && !segment_is_free(grid, wp[i], wp[j], step)) --j;
        out.push_back(wp[j]);
        i = j;
    }
    return make_path(std::move(out));
}

inline Path smooth(const OccupancyGrid& grid, const Path& path, const SmoothingConfig& cfg = {}) {
    if (cfg.iterations < 0) throw std::invalid_argument("smooth: iterations must be >= 0");
    if (!(cfg.corner_ratio > 0.0 && cfg.corner_ratio < 0.5))
        throw std::invalid_argument("smooth: corner_ratio must be in (0, 0.5)");
    if (path.size() < 3 || cfg.iterations == 0) return path;

    const double step = default_collision_step(grid, cfg.collision_step);
    std::vector<Point> cur = path.waypoints;
    double cur_metric = smoothness(path);

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        std::vector<Point> next = cur;
        for (std::size_t i = 1; i + 1 < next.size(); ++i) {
            const Point mid = 0.5 * (next[i - 1] + next[i + 1]);
            const Point moved = next[i] + cfg.corner_ratio * (mid - next[i]);
            if (moved == next[i - 1] || moved == next[i + 1]) continue;
            if (!segment_is_free(grid, next[i - 1], moved, step)) continue;
            if (!segment_is_free(grid, moved, next[i + 1], step)) continue;
            next[i] = moved;
        }
        Path candidate = make_path(std::move(next));
        const double metric = smoothness(candidate);
        if (metric > cur_metric) break;  // roll back the whole iteration
        cur = std::move(candidate.waypoints);
        cur_metric = metric;
    }
    return make_path(std::move(cur));
}

}  // namespace gridplan
