#pragma once
// Vertex generation for roadmap construction.
//
// sample_uniform: the classic PRM node set. Start and goal are forced, the
// rest is i.i.d. uniform over free space.
//
// sample_stratified: goal-directed node set. Of the random vertices,
// core_fraction land in a corridor around the start-goal segment; within
// that quota, boundary_subfraction land in an extension band of width delta
// just outside the corridor. The remainder is uniform over the whole free
// space so global exploration is never starved. A stratum whose region
// yields no free samples within its attempt budget spills its remaining
// quota into the global stratum.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridplan/collision.hpp"
#include "gridplan/geometry.hpp"
#include "gridplan/grid_map.hpp"
#include "gridplan/rng.hpp"

namespace gridplan {

class SamplingError : public std::runtime_error {
  public:
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

enum class Provenance : std::uint8_t { start, goal, core, boundary, global };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::start: return "start";
        case Provenance::goal: return "goal";
        case Provenance::core: return "core";
        case Provenance::boundary: return "boundary";
        case Provenance::global: return "global";
    }
    return "?";
}

struct SamplingConfig {
    int n_total = 2;
    double core_fraction = 0.70;
    double boundary_subfraction = 0.30;
    // Defaults are scale-relative: 0.15*||S-G|| and 0.10*||S-G||.
    std::optional<double> corridor_half_width;
    std::optional<double> delta;
    std::uint64_t seed = 0;
    int attempts_per_quota = 200;
};

struct VertexSet {
    std::vector<Point> points;       // [0] = S, [1] = G
    std::vector<Provenance> tags;

    int size() const { return static_cast<int>(points.size()); }
};

inline std::string vertex_csv(const VertexSet& vs) {
    std::string out = "index,x,y,provenance\n";
    char buf[128];
    for (int i = 0; i < vs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%s\n", i, vs.points[i].x, vs.points[i].y,
                      to_string(vs.tags[i]));
        out += buf;
    }
    return out;
}

inline int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

namespace detail {

// Rejection sampling of one free point satisfying pred, drawing from the
// shared budget. Returns nullopt when the budget runs out.
template <typename Pred>
std::optional<Point> draw_free_point(const OccupancyGrid& grid, SplitMix64& rng,
                                     long long& budget, Pred&& pred) {
    const double w = grid.width * grid.resolution;
    const double h = grid.height * grid.resolution;
    while (budget > 0) {
        --budget;
        const Point p{rng.next01() * w, rng.next01() * h};
        if (is_free(grid, p) && pred(p)) return p;
    }
    return std::nullopt;
}

}  // namespace detail

inline VertexSet sample_uniform(const OccupancyGrid& grid, int n_total, Point start,
                                Point goal, std::uint64_t seed) {
    if (n_total < 2) throw std::invalid_argument("sample_uniform: n_total must be >= 2");
    if (!is_free(grid, start) || !is_free(grid, goal))
        throw std::invalid_argument("sample_uniform: start/goal must be free");

    VertexSet vs;
    vs.points = {start, goal};
    vs.tags = {Provenance::start, Provenance::goal};

    SplitMix64 rng(seed);
    const int quota = n_total - 2;
    long long budget = 200LL * quota;
    for (int i = 0; i < quota; ++i) {
        auto p = detail::draw_free_point(grid, rng, budget, [](Point) { return true; });
        if (!p) throw SamplingError("sample_uniform: free space too small");
        vs.points.push_back(*p);
        vs.tags.push_back(Provenance::global);
    }
    return vs;
}

inline VertexSet sample_stratified(const OccupancyGrid& grid, const SamplingConfig& cfg,
                                   Point start, Point goal) {
    if (cfg.n_total < 2) throw std::invalid_argument("sample_stratified: n_total must be >= 2");
    if (!(cfg.core_fraction >= 0.0 && cfg.core_fraction <= 1.0) ||
        !(cfg.boundary_subfraction >= 0.0 && cfg.boundary_subfraction <= 1.0))
        throw std::invalid_argument("sample_stratified: fractions must be in [0, 1]");
    if (!is_free(grid, start) || !is_free(grid, goal))
        throw std::invalid_argument("sample_stratified: start/goal must be free");
    if (start == goal) throw std::invalid_argument("sample_stratified: start == goal");

    const double d_sg = euclidean(start, goal);
    const double half_width = cfg.corridor_half_width.value_or(0.15 * d_sg);
    const double delta = cfg.delta.value_or(0.10 * d_sg);
    if (!(half_width > 0.0)) throw std::invalid_argument("sample_stratified: corridor_half_width must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("sample_stratified: delta must be > 0");

    const int quota_random = cfg.n_total - 2;
    const int quota_corridor = round_half_up(cfg.core_fraction * quota_random);
    const int quota_boundary = round_half_up(cfg.boundary_subfraction * quota_corridor);
    const int quota_core = quota_corridor - quota_boundary;
    int quota_global = quota_random - quota_corridor;

    VertexSet vs;
    vs.points = {start, goal};
    vs.tags = {Provenance::start, Provenance::goal};

    SplitMix64 rng(cfg.seed);
    const auto in_core = [&](Point p) {
        return point_segment_distance(p, start, goal) <= half_width;
    };
    const auto in_boundary = [&](Point p) {
        const double d = point_segment_distance(p, start, goal);
        return d > half_width && d <= half_width + delta;
    };

    const auto run_stratum = [&](int quota, Provenance tag, auto&& pred) {
        long long budget = static_cast<long long>(cfg.attempts_per_quota) * quota;
        for (int i = 0; i < quota; ++i) {
            auto p = detail::draw_free_point(grid, rng, budget, pred);
            if (!p) {
                quota_global += quota - i;  // spill the shortfall
                return;
            }
            vs.points.push_back(*p);
            vs.tags.push_back(tag);
        }
    };

    run_stratum(quota_core, Provenance::core, in_core);
    run_stratum(quota_boundary, Provenance::boundary, in_boundary);

    long long budget = static_cast<long long>(cfg.attempts_per_quota) * quota_global;
    for (int i = 0; i < quota_global; ++i) {
        auto p = detail::draw_free_point(grid, rng, budget, [](Point) { return true; });
        if (!p) throw SamplingError("sample_stratified: free space too small");
        vs.points.push_back(*p);
        vs.tags.push_back(Provenance::global);
    }
    return vs;
}

}  // namespace gridplan
