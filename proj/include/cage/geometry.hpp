#pragma once

// Planar object and obstacle set: a simple polygon for the object, discs
// and capsules (possibly radius 0) for the obstacle components, and the
// distance/collision kernels the sweep certifier queries.
//
// Collision semantics are closed-set: boundary contact counts as a
// collision.  All distance comparisons carry an absolute tolerance of
// kDistTol.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cage/lie.hpp"
#include "cage/vec.hpp"

namespace cage {

inline constexpr double kDistTol = 1e-12;

// Counter-clockwise simple polygon (the object M).
struct Polygon {
    std::vector<Vec2> vertices;
};

struct Obstacle {
    enum class Kind { Disc, Capsule };
    Kind kind = Kind::Disc;
    Vec2 a;              // disc center, or capsule endpoint
    Vec2 b;              // capsule endpoint (== a for discs)
    double radius = 0.0;
    int component_id = 0;

    static Obstacle disc(Vec2 center, double radius, int component_id) {
        return {Kind::Disc, center, center, radius, component_id};
    }
    static Obstacle capsule(Vec2 a, Vec2 b, double radius, int component_id) {
        return {Kind::Capsule, a, b, radius, component_id};
    }
};

struct Scene {
    Polygon object;
    std::vector<Obstacle> cage;
    std::string name;
};

struct Aabb {
    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    bool empty() const { return lo.x > hi.x; }
    void expand(const Vec2& p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    void inflate(double r) {
        if (empty()) return;
        lo -= {r, r};
        hi += {r, r};
    }
};

// Throws std::invalid_argument on < 3 vertices, non-finite coordinates,
// clockwise orientation or self-intersection ("object polygon is not
// simple (edge i x edge j)").
void validate_object(const Polygon& poly);

// Throws on negative radius or non-contiguous component ids; degenerates
// zero-length capsules to discs.
void validate_scene(Scene& scene);

double signed_area(const Polygon& poly);
Vec2 polygon_centroid(const Polygon& poly);
double polygon_diameter(const Polygon& poly);

Polygon transform_shape(const Pose2& p, const Polygon& s);
void transform_points(const Pose2& p, std::span<const Vec2> in, std::vector<Vec2>& out);

// Point-set distance from the obstacle core (point or segment) to the
// closed polygon region, minus the obstacle radius.  Negative inside.
double separation(std::span<const Vec2> verts, const Obstacle& obs);

// min over obstacles of separation; +infinity for an empty cage.
double min_separation(std::span<const Vec2> verts, std::span<const Obstacle> cage);

// True iff some obstacle meets the closed polygon region (separation
// within kDistTol of zero or below).  Early-outs on the first hit.
bool intersects(std::span<const Vec2> verts, std::span<const Obstacle> cage);
bool intersects(const Polygon& s, const std::vector<Obstacle>& cage);

// max(0, min_separation); exactly 0 whenever intersects() is true.
double clearance(std::span<const Vec2> verts, std::span<const Obstacle> cage);
double clearance(const Polygon& s, const std::vector<Obstacle>& cage);

// Farthest vertex distance from `about` (the polygon's farthest point
// from any point is attained at a vertex).
double bounding_radius(std::span<const Vec2> verts, const Vec2& about);
double bounding_radius(const Polygon& s, const Vec2& about);

// Closed point-in-polygon (boundary inclusive within kDistTol).
bool point_in_polygon(const Vec2& p, std::span<const Vec2> verts);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);
double segment_segment_distance(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1);

Aabb cage_bounding_box(std::span<const Obstacle> cage);

// Center and radius of a circle containing every obstacle (bounding-box
// center based; not minimal).  Radius 0 for an empty cage.
struct Circle {
    Vec2 center;
    double radius = 0.0;
};
Circle cage_bounding_circle(std::span<const Obstacle> cage);

}  // namespace cage
