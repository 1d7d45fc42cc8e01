#pragma once
// Planar geometry primitives shared by every planner: distance metrics,
// point-to-segment distance, discrete turn angles and Menger curvature.

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridplan {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::sqrt(p.x * p.x + p.y * p.y); }

struct Segment {
    Point a;
    Point b;
};

inline double euclidean(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double manhattan(Point a, Point b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Distance from p to the segment a-b (projection parameter clamped to [0,1]).
inline double point_segment_distance(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return euclidean(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return euclidean(p, a + t * ab);
}

// Absolute heading change at p, in degrees within [0, 180].
inline double turn_angle(Point p_prev, Point p, Point p_next) {
    const Point u = p - p_prev;
    const Point v = p_next - p;
    const double lu = norm(u);
    const double lv = norm(v);
    if (lu == 0.0 || lv == 0.0)
        throw std::invalid_argument("turn_angle: adjoining segment has zero length");
    const double c = std::clamp(dot(u, v) / (lu * lv), -1.0, 1.0);
    return std::acos(c) * 180.0 / kPi;
}

// Discrete curvature of a point triple: 4*area / (product of side lengths),
// i.e. the inverse circumradius. Collinear triples give 0.
inline double menger_curvature(Point p_prev, Point p, Point p_next) {
    if (p_prev == p || p == p_next || p_prev == p_next)
        throw std::invalid_argument("menger_curvature: coincident points");
    const double twice_area = std::abs(cross(p - p_prev, p_next - p_prev));
    const double a = euclidean(p_prev, p);
    const double b = euclidean(p, p_next);
    const double c = euclidean(p_prev, p_next);
    return 2.0 * twice_area / (a * b * c);
}

}  // namespace gridplan
