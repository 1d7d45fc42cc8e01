#pragma once
// Roadmap construction: the undirected graph G = (V, E) over a vertex set.
//
// connect_fixed_k is the classic PRM rule: each vertex proposes edges to its
// k Euclidean-nearest neighbors, every unique candidate is collision-checked
// once, and survivors become edges weighted by Euclidean distance.
//
// connect_dynamic scales each vertex's target degree with its heuristic
// distance to the goal,
//     k(u) = max(floor(k_neighbors * (1 - h_u / h_max)), 3),
// so vertices near the goal connect densely and far vertices stay sparse.
// Candidates come from a pool of the 3*k_neighbors nearest vertices, ranked
// by
//     score(u, v) = dist(u, v) + 0.5 * |h_v - h_u|,
// and are collision-checked in rank order until k(u) edges incident to u
// are accepted or the pool runs out.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gridplan/collision.hpp"
#include "gridplan/geometry.hpp"
#include "gridplan/grid_map.hpp"
#include "gridplan/sampling.hpp"

namespace gridplan {

enum class HeuristicChoice { manhattan, euclidean };

inline const char* to_string(HeuristicChoice h) {
    return h == HeuristicChoice::manhattan ? "manhattan" : "euclidean";
}

inline double heuristic_value(HeuristicChoice h, Point a, Point b) {
    return h == HeuristicChoice::manhattan ? manhattan(a, b) : euclidean(a, b);
}

// Target degree for a vertex with heuristic value h_u, given the global
// maximum h_max = heuristic(S, T). Floor first, then clamp to at least 3;
// h_u > h_max lands on the clamp.
inline int dynamic_k(int k_neighbors, double h_u, double h_max) {
    if (k_neighbors < 1) throw std::invalid_argument("dynamic_k: k_neighbors must be >= 1");
    if (!(h_max > 0.0)) throw std::invalid_argument("dynamic_k: degenerate query (h_max == 0)");
    if (h_u < 0.0) throw std::invalid_argument("dynamic_k: h_u must be >= 0");
    const double raw = std::floor(k_neighbors * (1.0 - h_u / h_max));
    return raw < 3.0 ? 3 : static_cast<int>(raw);
}

// Candidate ranking score; lower is better.
inline double edge_score(Point u, Point v, double h_v, double h_u) {
    return euclidean(u, v) + 0.5 * std::abs(h_v - h_u);
}

struct Edge {
    int u = 0;  // u < v
    int v = 0;
    double weight = 0.0;
};

struct ConnectionStats {
    long long attempted = 0;  // unique candidate pairs submitted to collision checking
    long long accepted = 0;   // unique pairs added to E
};

struct Roadmap {
    VertexSet vertices;
    std::vector<Edge> edges;
    // adjacency[u] = (neighbor, weight), in edge insertion order
    std::vector<std::vector<std::pair<int, double>>> adjacency;
    ConnectionStats stats;

    int vertex_count() const { return vertices.size(); }
};

// ---------------- k-nearest-neighbor queries ----------------
// Uniform spatial buckets with a brute-force path for small vertex sets.

class SpatialIndex {
  public:
    enum class Mode { automatic, brute_force, buckets };

    static constexpr int kBucketThreshold = 2000;

    explicit SpatialIndex(std::span<const Point> points, Mode mode = Mode::automatic)
        : points_(points.begin(), points.end()) {
        use_buckets_ = mode == Mode::buckets ||
                       (mode == Mode::automatic &&
                        points_.size() >= static_cast<std::size_t>(kBucketThreshold));
        if (use_buckets_) build_buckets();
    }

    // Indices of the k nearest points to points_[query], excluding query
    // itself, sorted by (distance, index).
    std::vector<int> nearest(int query, int k) const {
        const int n = static_cast<int>(points_.size());
        k = std::min(k, n - 1);
        if (k <= 0) return {};
        return use_buckets_ ? nearest_buckets(query, k) : nearest_brute(query, k);
    }

  private:
    struct Candidate {
        double d2;
        int idx;
        bool operator<(const Candidate& o) const {
            return d2 != o.d2 ? d2 < o.d2 : idx < o.idx;
        }
    };

    std::vector<int> nearest_brute(int query, int k) const {
        const Point q = points_[query];
        std::vector<Candidate> c;
        c.reserve(points_.size() - 1);
        for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
            if (i == query) continue;
            const double dx = points_[i].x - q.x;
            const double dy = points_[i].y - q.y;
            c.push_back({dx * dx + dy * dy, i});
        }
        std::partial_sort(c.begin(), c.begin() + k, c.end());
        std::vector<int> out(k);
        for (int i = 0; i < k; ++i) out[i] = c[i].idx;
        return out;
    }

    void build_buckets() {
        min_x_ = min_y_ = std::numeric_limits<double>::infinity();
        double max_x = -min_x_, max_y = -min_y_;
        for (const Point& p : points_) {
            min_x_ = std::min(min_x_, p.x);
            min_y_ = std::min(min_y_, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
        const double w = std::max(max_x - min_x_, 1e-9);
        const double h = std::max(max_y - min_y_, 1e-9);
        // Aim for ~2 points per bucket.
        cell_ = std::max(std::sqrt(2.0 * w * h / static_cast<double>(points_.size())), 1e-9);
        nx_ = std::max(1, static_cast<int>(std::ceil(w / cell_)));
        ny_ = std::max(1, static_cast<int>(std::ceil(h / cell_)));
        buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
        for (int i = 0; i < static_cast<int>(points_.size()); ++i)
            buckets_[bucket_of(points_[i])].push_back(i);
    }

    std::size_t bucket_of(Point p) const {
        const int bx = std::clamp(static_cast<int>((p.x - min_x_) / cell_), 0, nx_ - 1);
        const int by = std::clamp(static_cast<int>((p.y - min_y_) / cell_), 0, ny_ - 1);
        return static_cast<std::size_t>(by) * nx_ + bx;
    }

    std::vector<int> nearest_buckets(int query, int k) const {
        const Point q = points_[query];
        const int qbx = std::clamp(static_cast<int>((q.x - min_x_) / cell_), 0, nx_ - 1);
        const int qby = std::clamp(static_cast<int>((q.y - min_y_) / cell_), 0, ny_ - 1);
        std::vector<Candidate> found;
        const int max_ring = std::max(nx_, ny_);
        for (int ring = 0; ring <= max_ring; ++ring) {
            // Any point in a bucket at Chebyshev ring r+1 is at least r*cell_
            // away, so once k candidates beat that bound we can stop.
            if (static_cast<int>(found.size()) >= k) {
                std::nth_element(found.begin(), found.begin() + (k - 1), found.end());
                const double bound = static_cast<double>(ring - 1) * cell_;
                if (ring > 0 && found[k - 1].d2 <= bound * bound) break;
            }
            scan_ring(qbx, qby, ring, q, query, found);
        }
        const int take = std::min<int>(k, static_cast<int>(found.size()));
        std::partial_sort(found.begin(), found.begin() + take, found.end());
        std::vector<int> out(take);
        for (int i = 0; i < take; ++i) out[i] = found[i].idx;
        return out;
    }

    void scan_ring(int qbx, int qby, int ring, Point q, int query,
                   std::vector<Candidate>& found) const {
        const auto scan_bucket = [&](int bx, int by) {
            if (bx < 0 || by < 0 || bx >= nx_ || by >= ny_) return;
            for (int i : buckets_[static_cast<std::size_t>(by) * nx_ + bx]) {
                if (i == query) continue;
                const double dx = points_[i].x - q.x;
                const double dy = points_[i].y - q.y;
                found.push_back({dx * dx + dy * dy, i});
            }
        };
        if (ring == 0) {
            scan_bucket(qbx, qby);
            return;
        }
        for (int bx = qbx - ring; bx <= qbx + ring; ++bx) {
            scan_bucket(bx, qby - ring);
            scan_bucket(bx, qby + ring);
        }
        for (int by = qby - ring + 1; by <= qby + ring - 1; ++by) {
            scan_bucket(qbx - ring, by);
            scan_bucket(qbx + ring, by);
        }
    }

    std::vector<Point> points_;
    bool use_buckets_ = false;
    double min_x_ = 0, min_y_ = 0, cell_ = 1;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<int>> buckets_;
};

namespace detail {

inline std::uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

inline void build_adjacency(Roadmap& rm) {
    rm.adjacency.assign(rm.vertex_count(), {});
    for (const Edge& e : rm.edges) {
        rm.adjacency[e.u].push_back({e.v, e.weight});
        rm.adjacency[e.v].push_back({e.u, e.weight});
    }
}

}  // namespace detail

inline Roadmap connect_fixed_k(const OccupancyGrid& grid, VertexSet vertices, int k,
                               double collision_step = 0.0,
                               SpatialIndex::Mode mode = SpatialIndex::Mode::automatic) {
    if (k < 1) throw std::invalid_argument("connect_fixed_k: k must be >= 1");
    const double step = default_collision_step(grid, collision_step);
    Roadmap rm;
    rm.vertices = std::move(vertices);
    const int n = rm.vertex_count();
    if (n >= 2) {
        SpatialIndex index(rm.vertices.points, mode);
        std::unordered_map<std::uint64_t, bool> checked;
        for (int u = 0; u < n; ++u) {
            for (int v : index.nearest(u, k)) {
                const auto key = detail::pair_key(u, v);
                if (checked.contains(key)) continue;
                ++rm.stats.attempted;
                const bool ok = segment_is_free(grid, rm.vertices.points[u],
                                                rm.vertices.points[v], step);
                checked.emplace(key, ok);
                if (ok) {
                    ++rm.stats.accepted;
                    rm.edges.push_back({std::min(u, v), std::max(u, v),
                                        euclidean(rm.vertices.points[u], rm.vertices.points[v])});
                }
            }
        }
    }
    detail::build_adjacency(rm);
    return rm;
}

inline Roadmap connect_dynamic(const OccupancyGrid& grid, VertexSet vertices, int k_neighbors,
                               HeuristicChoice heuristic, Point target,
                               double collision_step = 0.0, int pool_multiplier = 3,
                               SpatialIndex::Mode mode = SpatialIndex::Mode::automatic) {
    if (k_neighbors < 1) throw std::invalid_argument("connect_dynamic: k_neighbors must be >= 1");
    if (pool_multiplier < 1) throw std::invalid_argument("connect_dynamic: pool_multiplier must be >= 1");
    const double step = default_collision_step(grid, collision_step);

    Roadmap rm;
    rm.vertices = std::move(vertices);
    const int n = rm.vertex_count();
    if (n < 2) {
        detail::build_adjacency(rm);
        return rm;
    }

    const double h_max = heuristic_value(heuristic, rm.vertices.points[0], target);
    if (!(h_max > 0.0))
        throw std::invalid_argument("connect_dynamic: degenerate query (start is the target)");

    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = heuristic_value(heuristic, rm.vertices.points[i], target);

    SpatialIndex index(rm.vertices.points, mode);
    std::unordered_map<std::uint64_t, bool> checked;

    struct Ranked {
        double score;
        double dist;
        int idx;
        bool operator<(const Ranked& o) const {
            if (score != o.score) return score < o.score;
            if (dist != o.dist) return dist < o.dist;
            return idx < o.idx;
        }
    };

    for (int u = 0; u < n; ++u) {
        const int k_u = dynamic_k(k_neighbors, h[u], h_max);
        const std::vector<int> pool = index.nearest(u, pool_multiplier * k_neighbors);

        std::vector<Ranked> ranked;
        ranked.reserve(pool.size());
        for (int v : pool) {
            const double d = euclidean(rm.vertices.points[u], rm.vertices.points[v]);
            ranked.push_back({d + 0.5 * std::abs(h[v] - h[u]), d, v});
        }
        std::sort(ranked.begin(), ranked.end());

        int accepted_from_u = 0;
        for (const Ranked& cand : ranked) {
            if (accepted_from_u >= k_u) break;
            const auto key = detail::pair_key(u, cand.idx);
            if (auto it = checked.find(key); it != checked.end()) {
                // Already decided from the other endpoint; an accepted edge
                // still counts toward u's degree target.
                if (it->second) ++accepted_from_u;
                continue;
            }
            ++rm.stats.attempted;
            const bool ok = segment_is_free(grid, rm.vertices.points[u],
                                            rm.vertices.points[cand.idx], step);
            checked.emplace(key, ok);
            if (ok) {
                ++rm.stats.accepted;
                rm.edges.push_back({std::min(u, cand.idx), std::max(u, cand.idx), cand.dist});
                ++accepted_from_u;
            }
        }
    }
    detail::build_adjacency(rm);
    return rm;
}

inline std::string edge_csv(const Roadmap& rm) {
    std::string out = "u,v,weight\n";
    char buf[96];
    for (const Edge& e : rm.edges) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", e.u, e.v, e.weight);
        out += buf;
    }
    return out;
}

}  // namespace gridplan
