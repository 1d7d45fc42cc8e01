#pragma once
// Shared test helpers: random instance generators, independent re-checks,
// and a tiny XML well-formedness scanner.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <gridplan/collision.hpp>
#include <gridplan/grid_map.hpp>
#include <gridplan/rng.hpp>
#include <gridplan/search.hpp>

namespace testsupport {

using namespace gridplan;

// Grid with i.i.d. blocked cells (not the warehouse generator, so oracle
// tests do not share code paths with the library's map generation).
inline OccupancyGrid scatter_grid(int width, int height, double blocked_fraction,
                                  std::uint64_t seed) {
    OccupancyGrid g = OccupancyGrid::all_free(width, height);
    SplitMix64 rng(seed);
    for (auto& c : g.cells) c = rng.next01() < blocked_fraction ? 1 : 0;
    return g;
}

inline Point random_free_point(const OccupancyGrid& grid, SplitMix64& rng) {
    for (;;) {
        const Point p{rng.next01() * grid.width * grid.resolution,
                      rng.next01() * grid.height * grid.resolution};
        if (is_free(grid, p)) return p;
    }
}

// Re-validates a path independently: endpoints intact and every segment
// collision-free at the given step.
inline bool path_is_collision_free(const OccupancyGrid& grid, const Path& path, double step) {
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
        if (!segment_is_free(grid, path.waypoints[i], path.waypoints[i + 1], step)) return false;
    return true;
}

// Minimal XML well-formedness check: every tag closes, nesting matches.
inline bool xml_well_formed(const std::string& doc) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    while ((pos = doc.find('<', pos)) != std::string::npos) {
        const std::size_t end = doc.find('>', pos);
        if (end == std::string::npos) return false;
        std::string tag = doc.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (tag[0] == '/') {
            if (stack.empty()) return false;
            if (stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.back() == '/';
        if (self_closing) tag.pop_back();
        const std::size_t name_end = tag.find_first_of(" \t\r\n");
        const std::string name = tag.substr(0, name_end);
        if (name.empty()) return false;
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

inline int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

}  // namespace testsupport
