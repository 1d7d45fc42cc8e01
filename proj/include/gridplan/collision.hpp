#pragma once
// Segment collision checking against an occupancy grid.
//
// The check is an exact cell traversal: it walks every cell whose interior
// the segment passes through (Amanatides-Woo stepping) plus both endpoint
// cells, and reports free only if all of them are free. Exactness is what
// makes collision results self-consistent: a free segment stays free on
// every sub-segment and under re-checks at any finer step, which point
// sampling at a fixed spacing cannot guarantee (a segment can clip a
// blocked cell corner between two samples).
//
// A segment crossing exactly through a lattice corner between two blocked
// diagonal cells touches only their boundary; the robot is a point, so that
// counts as free. The step parameter is the legacy sampling spacing; it is
// validated and kept so callers can carry a collision-resolution setting,
// but the traversal itself does not depend on it.

#include <cmath>
#include <stdexcept>

#include "gridplan/geometry.hpp"
#include "gridplan/grid_map.hpp"

namespace gridplan {

// Half a cell, kept as the default collision-step setting carried through
// planner configs.
inline double default_collision_step(const OccupancyGrid& grid, double step) {
    return step > 0.0 ? step : 0.5 * grid.resolution;
}

inline bool segment_is_free(const OccupancyGrid& grid, Point a, Point b, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("segment_is_free: step must be > 0");
    if (!is_free(grid, a) || !is_free(grid, b)) return false;

    const double res = grid.resolution;
    int cx = static_cast<int>(a.x / res);
    int cy = static_cast<int>(a.y / res);
    const int ex = static_cast<int>(b.x / res);
    const int ey = static_cast<int>(b.y / res);
    if (cx == ex && cy == ey) return true;

    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const int sx = dx > 0.0 ? 1 : -1;
    const int sy = dy > 0.0 ? 1 : -1;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // Parameter t in [0, 1] of the next x/y gridline crossing, and the
    // per-cell increments.
    double t_max_x = kInf, t_delta_x = kInf;
    if (dx != 0.0) {
        const double boundary = (dx > 0.0 ? cx + 1 : cx) * res;
        t_max_x = (boundary - a.x) / dx;
        t_delta_x = res / std::abs(dx);
    }
    double t_max_y = kInf, t_delta_y = kInf;
    if (dy != 0.0) {
        const double boundary = (dy > 0.0 ? cy + 1 : cy) * res;
        t_max_y = (boundary - a.y) / dy;
        t_delta_y = res / std::abs(dy);
    }

    // Each iteration moves one cell toward the endpoint; drifting past it
    // can only run out of bounds, which reads as blocked.
    const long long budget =
        2LL * (std::abs(ex - cx) + std::abs(ey - cy)) + 8;
    for (long long i = 0; i < budget && (cx != ex || cy != ey); ++i) {
        if (t_max_x < t_max_y) {
            cx += sx;
            t_max_x += t_delta_x;
        } else if (t_max_y < t_max_x) {
            cy += sy;
            t_max_y += t_delta_y;
        } else {
            // Exact corner crossing: step diagonally.
            cx += sx;
            cy += sy;
            t_max_x += t_delta_x;
            t_max_y += t_delta_y;
        }
        if (!grid.cell_free(cx, cy)) return false;
    }
    return cx == ex && cy == ey;
}

inline bool segment_is_free(const OccupancyGrid& grid, const Segment& s, double step) {
    return segment_is_free(grid, s.a, s.b, step);
}

}  // namespace gridplan
