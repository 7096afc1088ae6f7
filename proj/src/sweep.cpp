#include "cage/sweep.hpp"

#include <cmath>

namespace cage {

namespace {

struct SweepContext {
    const Scene& scene;
    const SimpleMove& move;
    double bound;                     // velocity bound L
    std::vector<Vec2>& scratch;       // posed vertices at the probe t

    double separation_at(double t) {
        const Pose2 p = compose(exp_twist(move.twist, t), move.start);
        transform_points(p, scene.object.vertices, scratch);
        return min_separation(scratch, scene.cage);
    }
};

SweepVerdict sweep(SweepContext& ctx, double a, double b, int depth) {
    const double tm = 0.5 * (a + b);
    const double sep = ctx.separation_at(tm);
    if (sep <= kDistTol) {
        // Verified contact at tm; refine leftward toward the entry time.
        if (depth >= kSweepMaxDepth) return SweepVerdict::colliding(tm);
        const SweepVerdict left = sweep(ctx, a, tm, depth + 1);
        return left.is_colliding() ? left : SweepVerdict::colliding(tm);
    }
    if (sep > ctx.bound * 0.5 * (b - a)) return SweepVerdict::free();
    if (depth >= kSweepMaxDepth) return SweepVerdict::unknown();
    const SweepVerdict left = sweep(ctx, a, tm, depth + 1);
    if (!left.is_free()) return left;
    return sweep(ctx, tm, b, depth + 1);
}

}  // namespace

double velocity_bound(const SimpleMove& m, const Polygon& shape) {
    const Screw2 s = screw_decompose(m.twist);
    if (s.is_pure_translation) return norm(m.twist.xi);
    // Every point keeps its distance to the fixed center -xi0, so the
    // worst speed is |theta| times the farthest posed vertex.
    const Vec2 center = -s.center_offset;
    double r = 0.0;
    for (const Vec2& v : shape.vertices)
        r = std::max(r, norm2(m.start.apply(v) - center));
    return std::abs(m.twist.omega) * std::sqrt(r);
}

SweepVerdict certify_simple_move(const Scene& scene, const SimpleMove& m) {
    SweepContext ctx{scene, m, velocity_bound(m, scene.object), {}};
    ctx.scratch.reserve(scene.object.vertices.size());
    return sweep(ctx, 0.0, 1.0, 0);
}

std::vector<Pose2> piecewise_waypoints(const PiecewiseMove& m) {
    std::vector<Pose2> wp;
    wp.reserve(m.segments.size() + 1);
    wp.push_back(m.start);
    for (const Twist2& g : m.segments)
        wp.push_back(compose(exp_twist(g, 1.0), wp.back()));
    return wp;
}

SweepVerdict certify_piecewise(const Scene& scene, const PiecewiseMove& m) {
    const size_t ell = m.segments.size();
    Pose2 at = m.start;
    for (size_t j = 0; j < ell; ++j) {
        const SweepVerdict v = certify_simple_move(scene, {m.segments[j], at});
        if (!v.is_free()) {
            if (v.is_colliding())
                return SweepVerdict::colliding((double(j) + v.t_hit) / double(ell));
            return v;
        }
        at = compose(exp_twist(m.segments[j], 1.0), at);
    }
    return SweepVerdict::free();
}

bool dense_sample_free(const Scene& scene, const SimpleMove& m, int samples) {
    std::vector<Vec2> scratch;
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : double(i) / double(samples - 1);
        const Pose2 p = compose(exp_twist(m.twist, t), m.start);
        transform_points(p, scene.object.vertices, scratch);
        if (intersects(scratch, scene.cage)) return false;
    }
    return true;
}

}  // namespace cage
