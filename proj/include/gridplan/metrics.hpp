#pragma once
// Evaluation metrics over paths and trials: length, smoothness (degrees per
// meter), max discrete curvature, and trimmed trial aggregation (drop one
// max and one min per metric, then mean / population std).

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gridplan/geometry.hpp"
#include "gridplan/search.hpp"

namespace gridplan {

inline double path_length(const Path& path) {
    if (path.size() < 2) throw std::invalid_argument("path_length: need at least 2 waypoints");
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
        len += euclidean(path.waypoints[i], path.waypoints[i + 1]);
    return len;
}

// Total turn angle over interior vertices divided by path length, in °/m.
inline double smoothness(const Path& path) {
    if (path.size() < 2) throw std::invalid_argument("smoothness: need at least 2 waypoints");
    const double len = path_length(path);
    if (len == 0.0) throw std::invalid_argument("smoothness: zero-length path");
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < path.waypoints.size(); ++i)
        total += turn_angle(path.waypoints[i - 1], path.waypoints[i], path.waypoints[i + 1]);
    return total / len;
}

// Max Menger curvature over interior triples; 0 when no interior vertex.
// Triples with coincident points (exact hairpins) are skipped.
inline double max_curvature(const Path& path) {
    double best = 0.0;
    for (std::size_t i = 1; i + 1 < path.waypoints.size(); ++i) {
        const Point a = path.waypoints[i - 1];
        const Point b = path.waypoints[i];
        const Point c = path.waypoints[i + 1];
        if (a == b || b == c || a == c) continue;
        best = std::max(best, menger_curvature(a, b, c));
    }
    return best;
}

// Per-trial metrics. node_expansion counts |V| for roadmap planners and
// frontier pops for grid planners.
struct PlanReport {
    double path_length = 0.0;
    double wall_time = 0.0;
    long long node_expansion = 0;
    double smoothness = 0.0;
    double max_curvature = 0.0;
    std::optional<double> connection_rate;  // accepted/attempted; grid planners have none
};

struct MetricStat {
    double mean = 0.0;
    double stddev = 0.0;  // population std of the trimmed sample
};

struct TrialAggregate {
    int n_trials = 0;
    MetricStat path_length, wall_time, node_expansion, smoothness, max_curvature;
    std::optional<MetricStat> connection_rate;
    double fluctuation_pct = 0.0;  // trimmed std / trimmed mean of path length, in %
};

namespace detail {

// Drop exactly one max and one min, then mean and population std.
inline MetricStat trimmed_stat(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(xs.begin());
    xs.pop_back();
    MetricStat s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

}  // namespace detail

inline TrialAggregate aggregate(std::span<const PlanReport> trials) {
    if (trials.size() < 3) throw std::invalid_argument("aggregate: need at least 3 trials");
    TrialAggregate agg;
    agg.n_trials = static_cast<int>(trials.size());

    const auto column = [&](auto&& get) {
        std::vector<double> xs;
        xs.reserve(trials.size());
        for (const PlanReport& r : trials) xs.push_back(get(r));
        return xs;
    };
    agg.path_length = detail::trimmed_stat(column([](const PlanReport& r) { return r.path_length; }));
    agg.wall_time = detail::trimmed_stat(column([](const PlanReport& r) { return r.wall_time; }));
    agg.node_expansion = detail::trimmed_stat(
        column([](const PlanReport& r) { return static_cast<double>(r.node_expansion); }));
    agg.smoothness = detail::trimmed_stat(column([](const PlanReport& r) { return r.smoothness; }));
    agg.max_curvature =
        detail::trimmed_stat(column([](const PlanReport& r) { return r.max_curvature; }));

    std::vector<double> rates;
    for (const PlanReport& r : trials)
        if (r.connection_rate) rates.push_back(*r.connection_rate);
    if (rates.size() == trials.size()) agg.connection_rate = detail::trimmed_stat(std::move(rates));

    agg.fluctuation_pct =
        agg.path_length.mean != 0.0 ? 100.0 * agg.path_length.stddev / agg.path_length.mean : 0.0;
    return agg;
}

}  // namespace gridplan
