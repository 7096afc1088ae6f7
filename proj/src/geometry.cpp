#include "cage/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cage {

namespace {

// Orientation sign of (b - a) x (c - a).
int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = cross(b - a, c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Closed segment intersection test (touching counts).
bool segments_intersect(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
    const int o1 = orient(a0, a1, b0);
    const int o2 = orient(a0, a1, b1);
    const int o3 = orient(b0, b1, a0);
    const int o4 = orient(b0, b1, a1);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a0, a1, b0)) return true;
    if (o2 == 0 && on_segment(a0, a1, b1)) return true;
    if (o3 == 0 && on_segment(b0, b1, a0)) return true;
    if (o4 == 0 && on_segment(b0, b1, a1)) return true;
    return false;
}

double point_segment_distance2(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return norm2(p - a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm2(p - (a + ab * t));
}

double segment_segment_distance2(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                                 const Vec2& b1) {
    if (segments_intersect(a0, a1, b0, b1)) return 0.0;
    return std::min(std::min(point_segment_distance2(a0, b0, b1),
                             point_segment_distance2(a1, b0, b1)),
                    std::min(point_segment_distance2(b0, a0, a1),
                             point_segment_distance2(b1, a0, a1)));
}

// Distance from point to the closed polygon region: 0 inside, boundary
// distance outside.
double point_region_distance(const Vec2& p, std::span<const Vec2> verts) {
    const size_t n = verts.size();
    double best2 = std::numeric_limits<double>::infinity();
    // Crossing parity and boundary distance in one pass.
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& vi = verts[i];
        const Vec2& vj = verts[j];
        best2 = std::min(best2, point_segment_distance2(p, vj, vi));
        if ((vi.y > p.y) != (vj.y > p.y)) {
            const double xc = vj.x + (p.y - vj.y) / (vi.y - vj.y) * (vi.x - vj.x);
            if (p.x < xc) inside = !inside;
        }
    }
    const double bd = std::sqrt(best2);
    if (inside || bd <= kDistTol) return 0.0;
    return bd;
}

// Distance from a segment to the closed polygon region.
double segment_region_distance(const Vec2& a, const Vec2& b, std::span<const Vec2> verts) {
    // Core inside the region (either endpoint interior) or crossing the
    // boundary means contact.
    const size_t n = verts.size();
    double best2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
        best2 = std::min(best2, segment_segment_distance2(a, b, verts[j], verts[i]));
    if (best2 == 0.0) return 0.0;
    if (point_region_distance(a, verts) == 0.0) return 0.0;
    return std::sqrt(best2);
}

}  // namespace

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    return std::sqrt(point_segment_distance2(p, a, b));
}

double segment_segment_distance(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                                const Vec2& b1) {
    return std::sqrt(segment_segment_distance2(a0, a1, b0, b1));
}

bool point_in_polygon(const Vec2& p, std::span<const Vec2> verts) {
    return point_region_distance(p, verts) == 0.0;
}

double signed_area(const Polygon& poly) {
    double s = 0.0;
    const auto& v = poly.vertices;
    for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        s += cross(v[j], v[i]);
    return 0.5 * s;
}

Vec2 polygon_centroid(const Polygon& poly) {
    const auto& v = poly.vertices;
    double a = 0.0;
    Vec2 c{0.0, 0.0};
    for (size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const double w = cross(v[j], v[i]);
        a += w;
        c += (v[j] + v[i]) * w;
    }
    if (a == 0.0) return v.empty() ? Vec2{0, 0} : v[0];
    return c * (1.0 / (3.0 * a));
}

double polygon_diameter(const Polygon& poly) {
    const auto& v = poly.vertices;
    double best = 0.0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            best = std::max(best, norm2(v[i] - v[j]));
    return std::sqrt(best);
}

void validate_object(const Polygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3)
        throw std::invalid_argument("object polygon needs at least 3 vertices");
    for (const Vec2& p : v)
        if (!finite(p))
            throw std::invalid_argument("object polygon has non-finite vertex");
    const size_t n = v.size();
    // O(m^2) pairwise test; adjacent edges share only their endpoint.
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a0 = v[i];
        const Vec2& a1 = v[(i + 1) % n];
        if (norm2(a1 - a0) == 0.0)
            throw std::invalid_argument("object polygon has a zero-length edge");
        for (size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            const Vec2& b0 = v[j];
            const Vec2& b1 = v[(j + 1) % n];
            if (segments_intersect(a0, a1, b0, b1))
                throw std::invalid_argument("object polygon is not simple (edge " +
                                            std::to_string(i) + " x edge " +
                                            std::to_string(j) + ")");
        }
    }
    if (signed_area(poly) <= 0.0)
        throw std::invalid_argument("object polygon must be counter-clockwise");
}

void validate_scene(Scene& scene) {
    validate_object(scene.object);
    int max_id = -1;
    std::vector<char> seen;
    for (Obstacle& o : scene.cage) {
        if (!finite(o.a) || !finite(o.b) || !std::isfinite(o.radius))
            throw std::invalid_argument("obstacle has non-finite geometry");
        if (o.radius < 0.0)
            throw std::invalid_argument("obstacle radius must be >= 0");
        if (o.kind == Obstacle::Kind::Capsule && norm2(o.b - o.a) == 0.0) {
            o.kind = Obstacle::Kind::Disc;  // degenerate capsule
            o.b = o.a;
        }
        if (o.component_id < 0)
            throw std::invalid_argument("obstacle component id must be >= 0");
        max_id = std::max(max_id, o.component_id);
        if ((size_t)o.component_id >= seen.size()) seen.resize(o.component_id + 1, 0);
        seen[o.component_id] = 1;
    }
    for (int i = 0; i <= max_id; ++i)
        if (!seen[i])
            throw std::invalid_argument("obstacle component ids must form 0..p-1");
}

Polygon transform_shape(const Pose2& p, const Polygon& s) {
    Polygon out;
    out.vertices.reserve(s.vertices.size());
    for (const Vec2& v : s.vertices) out.vertices.push_back(p.apply(v));
    return out;
}

void transform_points(const Pose2& p, std::span<const Vec2> in, std::vector<Vec2>& out) {
    out.resize(in.size());
    for (size_t i = 0; i < in.size(); ++i) out[i] = p.apply(in[i]);
}

double separation(std::span<const Vec2> verts, const Obstacle& obs) {
    const double core = obs.kind == Obstacle::Kind::Disc
                            ? point_region_distance(obs.a, verts)
                            : segment_region_distance(obs.a, obs.b, verts);
    return core - obs.radius;
}

double min_separation(std::span<const Vec2> verts, std::span<const Obstacle> cage) {
    double best = std::numeric_limits<double>::infinity();
    for (const Obstacle& o : cage) best = std::min(best, separation(verts, o));
    return best;
}

bool intersects(std::span<const Vec2> verts, std::span<const Obstacle> cage) {
    for (const Obstacle& o : cage)
        if (separation(verts, o) <= kDistTol) return true;
    return false;
}

bool intersects(const Polygon& s, const std::vector<Obstacle>& cage) {
    return intersects(std::span<const Vec2>(s.vertices), std::span<const Obstacle>(cage));
}

double clearance(std::span<const Vec2> verts, std::span<const Obstacle> cage) {
    const double sep = min_separation(verts, cage);
    return sep <= kDistTol ? 0.0 : sep;
}

double clearance(const Polygon& s, const std::vector<Obstacle>& cage) {
    return clearance(std::span<const Vec2>(s.vertices), std::span<const Obstacle>(cage));
}

double bounding_radius(std::span<const Vec2> verts, const Vec2& about) {
    double best2 = 0.0;
    for (const Vec2& v : verts) best2 = std::max(best2, norm2(v - about));
    return std::sqrt(best2);
}

double bounding_radius(const Polygon& s, const Vec2& about) {
    return bounding_radius(std::span<const Vec2>(s.vertices), about);
}

Aabb cage_bounding_box(std::span<const Obstacle> cage) {
    Aabb box;
    for (const Obstacle& o : cage) {
        Aabb core;
        core.expand(o.a);
        core.expand(o.b);
        core.inflate(o.radius);
        box.expand(core.lo);
        box.expand(core.hi);
    }
    return box;
}

Circle cage_bounding_circle(std::span<const Obstacle> cage) {
    const Aabb box = cage_bounding_box(cage);
    if (box.empty()) return Circle{{0.0, 0.0}, 0.0};
    const Vec2 c = (box.lo + box.hi) * 0.5;
    double r = 0.0;
    for (const Obstacle& o : cage) {
        r = std::max(r, norm(o.a - c) + o.radius);
        r = std::max(r, norm(o.b - c) + o.radius);
    }
    return Circle{c, r};
}

}  // namespace cage
