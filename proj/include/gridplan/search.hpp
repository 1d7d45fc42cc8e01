#pragma once
// Shortest-path queries with expansion counting.
//
// Graph variants run on a Roadmap under its Euclidean edge weights; grid
// variants run 8-connected on the raw raster (straight moves cost one cell,
// diagonals sqrt(2), no corner cutting). A* orders the frontier by
// f = g + h with g of unvisited nodes at infinity; Dijkstra is the zero-
// heuristic special case. Ties break toward larger g, then FIFO.
//
// The grid heuristic is octile distance (admissible for unit/sqrt2 moves).
// Roadmap queries default to the Euclidean heuristic; Manhattan is offered
// scaled by 1/sqrt(2), which restores admissibility on Euclidean-weighted
// edges.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridplan/geometry.hpp"
#include "gridplan/grid_map.hpp"
#include "gridplan/roadmap.hpp"

namespace gridplan {

struct Path {
    std::vector<Point> waypoints;  // first == S, last == G
    double total_length = 0.0;

    int size() const { return static_cast<int>(waypoints.size()); }
};

// Builds a Path, dropping exact consecutive duplicates.
inline Path make_path(std::vector<Point> pts) {
    Path p;
    for (const Point& q : pts) {
        if (!p.waypoints.empty() && p.waypoints.back() == q) continue;
        if (!p.waypoints.empty()) p.total_length += euclidean(p.waypoints.back(), q);
        p.waypoints.push_back(q);
    }
    return p;
}

struct SearchResult {
    std::optional<Path> path;
    double cost = std::numeric_limits<double>::infinity();
    long long expanded = 0;  // nodes popped from the frontier
    long long touched = 0;   // distinct nodes ever enqueued
};

namespace detail {

struct QueueEntry {
    double f;
    double g;
    std::uint64_t seq;
    int node;
};

struct QueueOrder {
    // std::priority_queue pops the "largest"; define less-than as
    // worse-than: higher f, then smaller g, then later insertion.
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.seq > b.seq;
    }
};

template <typename HeuristicFn>
SearchResult graph_search(const Roadmap& rm, int s_index, int g_index, HeuristicFn&& h) {
    const int n = rm.vertex_count();
    if (s_index < 0 || s_index >= n || g_index < 0 || g_index >= n)
        throw std::invalid_argument("graph search: vertex index out of range");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> g(n, kInf);
    std::vector<int> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0), seen(n, 0);
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> open;

    SearchResult res;
    std::uint64_t seq = 0;
    g[s_index] = 0.0;
    open.push({h(s_index), 0.0, seq++, s_index});
    seen[s_index] = 1;
    res.touched = 1;

    while (!open.empty()) {
        const QueueEntry top = open.top();
        open.pop();
        const int u = top.node;
        if (closed[u]) continue;  // stale entry
        closed[u] = 1;
        ++res.expanded;
        if (u == g_index) break;
        for (const auto& [v, w] : rm.adjacency[u]) {
            if (closed[v]) continue;
            const double g_temp = g[u] + w;
            if (g_temp < g[v]) {
                g[v] = g_temp;
                parent[v] = u;
                open.push({g_temp + h(v), g_temp, seq++, v});
                if (!seen[v]) {
                    seen[v] = 1;
                    ++res.touched;
                }
            }
        }
    }

    if (!closed[g_index]) return res;  // unreachable: path stays empty
    std::vector<Point> pts;
    for (int v = g_index; v != -1; v = parent[v]) pts.push_back(rm.vertices.points[v]);
    std::reverse(pts.begin(), pts.end());
    res.path = make_path(std::move(pts));
    res.cost = g[g_index];
    return res;
}

}  // namespace detail

inline SearchResult graph_astar(const Roadmap& rm, int s_index, int g_index,
                                HeuristicChoice heuristic, Point target) {
    if (heuristic == HeuristicChoice::euclidean) {
        return detail::graph_search(rm, s_index, g_index, [&](int v) {
            return euclidean(rm.vertices.points[v], target);
        });
    }
    return detail::graph_search(rm, s_index, g_index, [&](int v) {
        return manhattan(rm.vertices.points[v], target) / kSqrt2;
    });
}

inline SearchResult graph_dijkstra(const Roadmap& rm, int s_index, int g_index) {
    return detail::graph_search(rm, s_index, g_index, [](int) { return 0.0; });
}

// ---------------- grid search ----------------

namespace detail {

inline double octile(int dx, int dy) {
    const int adx = std::abs(dx), ady = std::abs(dy);
    const int lo = std::min(adx, ady), hi = std::max(adx, ady);
    return static_cast<double>(hi - lo) + kSqrt2 * static_cast<double>(lo);
}

inline SearchResult grid_search(const OccupancyGrid& grid, Point start, Point goal,
                                bool use_octile) {
    if (!is_free(grid, start) || !is_free(grid, goal))
        throw std::invalid_argument("grid search: start/goal blocked or out of bounds");

    const int sx = static_cast<int>(start.x / grid.resolution);
    const int sy = static_cast<int>(start.y / grid.resolution);
    const int gx = static_cast<int>(goal.x / grid.resolution);
    const int gy = static_cast<int>(goal.y / grid.resolution);

    const std::size_t n_cells = grid.cells.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> g(n_cells, kInf);
    std::vector<std::int32_t> parent(n_cells, -1);
    std::vector<std::uint8_t> closed(n_cells, 0), seen(n_cells, 0);
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> open;

    const auto h = [&](int cx, int cy) {
        return use_octile ? octile(gx - cx, gy - cy) * grid.resolution : 0.0;
    };

    SearchResult res;
    std::uint64_t seq = 0;
    const int s_idx = static_cast<int>(grid.index(sx, sy));
    const int g_idx = static_cast<int>(grid.index(gx, gy));
    g[s_idx] = 0.0;
    open.push({h(sx, sy), 0.0, seq++, s_idx});
    seen[s_idx] = 1;
    res.touched = 1;

    while (!open.empty()) {
        const QueueEntry top = open.top();
        open.pop();
        const int u = top.node;
        if (closed[u]) continue;
        closed[u] = 1;
        ++res.expanded;
        if (u == g_idx) break;
        const int cx = u % grid.width;
        const int cy = u / grid.width;
        for (const GridStep& s : kGridSteps) {
            if (!step_allowed(grid, cx, cy, s)) continue;
            const int v = static_cast<int>(grid.index(cx + s.dx, cy + s.dy));
            if (closed[v]) continue;
            const double g_temp = g[u] + s.cost * grid.resolution;
            if (g_temp < g[v]) {
                g[v] = g_temp;
                parent[v] = u;
                open.push({g_temp + h(cx + s.dx, cy + s.dy), g_temp, seq++, v});
                if (!seen[v]) {
                    seen[v] = 1;
                    ++res.touched;
                }
            }
        }
    }

    if (!closed[g_idx]) return res;
    // Waypoints: exact start, centers of the intermediate cells, exact goal.
    std::vector<int> chain;
    for (int v = g_idx; v != -1; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    std::vector<Point> pts;
    pts.reserve(chain.size() + 1);
    pts.push_back(start);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i)
        pts.push_back(grid.cell_center(chain[i] % grid.width, chain[i] / grid.width));
    pts.push_back(goal);
    res.path = make_path(std::move(pts));
    res.cost = g[g_idx];  // sum of move costs, in meters
    return res;
}

}  // namespace detail

inline SearchResult grid_astar(const OccupancyGrid& grid, Point start, Point goal) {
    return detail::grid_search(grid, start, goal, /*use_octile=*/true);
}

inline SearchResult grid_dijkstra(const OccupancyGrid& grid, Point start, Point goal) {
    return detail::grid_search(grid, start, goal, /*use_octile=*/false);
}

inline std::string path_csv(const Path& path) {
    std::string out = "x,y\n";
    char buf[80];
    for (const Point& p : path.waypoints) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        out += buf;
    }
    return out;
}

inline std::string search_result_csv(const SearchResult& res, double wall_time_s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "cost,expanded,touched,time_s\n%.17g,%lld,%lld,%.6f\n",
                  res.cost, res.expanded, res.touched, wall_time_s);
    return buf;
}

}  // namespace gridplan
