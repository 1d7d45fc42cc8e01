#pragma once
// SVG rendering of maps, roadmaps, and paths. Blocked cells are merged into
// one rect per horizontal run; each path becomes its own stroked polyline.
// The viewBox matches the grid dimensions (cell units).

#include <cstdarg>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "gridplan/grid_map.hpp"
#include "gridplan/roadmap.hpp"
#include "gridplan/search.hpp"

namespace gridplan {

namespace detail {

inline void append_fmt(std::string& out, const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    out += buf;
}

}  // namespace detail

inline std::string render_svg(const OccupancyGrid& grid, const Roadmap* roadmap,
                              std::span<const Path> paths) {
    static const char* kPathColors[] = {"#d95f02", "#1b9e77", "#7570b3", "#e7298a", "#66a61e"};
    const double res = grid.resolution;
    std::string svg;
    detail::append_fmt(svg,
                       "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 %d %d\" "
                       "width=\"%d\" height=\"%d\">\n",
                       grid.width, grid.height, grid.width, grid.height);

    svg += "<g fill=\"#444444\">\n";
    for (int y = 0; y < grid.height; ++y) {
        int x = 0;
        while (x < grid.width) {
            if (!grid.cells[grid.index(x, y)]) {
                ++x;
                continue;
            }
            int run = x;
            while (run < grid.width && grid.cells[grid.index(run, y)]) ++run;
            detail::append_fmt(svg, "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"1\"/>\n", x, y,
                               run - x);
            x = run;
        }
    }
    svg += "</g>\n";

    if (roadmap) {
        svg += "<g stroke=\"#9ecae1\" stroke-width=\"0.4\" stroke-opacity=\"0.6\">\n";
        for (const Edge& e : roadmap->edges) {
            const Point a = roadmap->vertices.points[e.u];
            const Point b = roadmap->vertices.points[e.v];
            detail::append_fmt(svg, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n",
                               a.x / res, a.y / res, b.x / res, b.y / res);
        }
        svg += "</g>\n<g fill=\"#3182bd\" fill-opacity=\"0.8\">\n";
        for (const Point& p : roadmap->vertices.points)
            detail::append_fmt(svg, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.2\"/>\n", p.x / res,
                               p.y / res);
        svg += "</g>\n";
    }

    int color = 0;
    for (const Path& path : paths) {
        if (path.size() < 2) continue;
        detail::append_fmt(svg,
                           "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"2\" points=\"",
                           kPathColors[color++ % 5]);
        for (std::size_t i = 0; i < path.waypoints.size(); ++i)
            detail::append_fmt(svg, "%s%.3f,%.3f", i ? " " : "", path.waypoints[i].x / res,
                               path.waypoints[i].y / res);
        svg += "\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

inline std::string render_svg(const OccupancyGrid& grid, const Roadmap* roadmap,
                              const std::vector<Path>& paths) {
    return render_svg(grid, roadmap, std::span<const Path>(paths));
}

}  // namespace gridplan
