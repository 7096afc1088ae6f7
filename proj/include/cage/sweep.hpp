#pragma once

// Conservative certification that a one-parameter orbit of the object
// stays disjoint from the obstacle set over t in [0,1].
//
// Adaptive interval bisection: an interval is certified free when the
// clearance at its midpoint exceeds the worst-case travel L * half-width
// given the move's velocity bound L.  Free verdicts are sound (no
// collision exists, up to the kDistTol metric tolerance); Colliding
// verdicts carry a verified contact parameter; Unknown means the depth
// budget ran out (grazing contact).

#include <vector>

#include "cage/geometry.hpp"
#include "cage/lie.hpp"

namespace cage {

inline constexpr int kSweepMaxDepth = 32;

// One simple move: the orbit exp(t * twist) composed onto start.
struct SimpleMove {
    Twist2 twist;
    Pose2 start;
};

// Simple moves chained in order; segment i runs over its own unit
// interval starting from the endpoint of segment i-1.
struct PiecewiseMove {
    Pose2 start;
    std::vector<Twist2> segments;
};

struct SweepVerdict {
    enum class Outcome { Free, Colliding, Unknown };
    Outcome outcome = Outcome::Free;
    double t_hit = 0.0;  // meaningful iff Colliding

    static SweepVerdict free() { return {Outcome::Free, 0.0}; }
    static SweepVerdict colliding(double t) { return {Outcome::Colliding, t}; }
    static SweepVerdict unknown() { return {Outcome::Unknown, 0.0}; }

    bool is_free() const { return outcome == Outcome::Free; }
    bool is_colliding() const { return outcome == Outcome::Colliding; }
};

// Upper bound on the speed of any object point along the move, per unit
// of t.  Exact for pure rotations (|theta| times the farthest point from
// the center) and for translations (|xi|).
double velocity_bound(const SimpleMove& m, const Polygon& shape);

SweepVerdict certify_simple_move(const Scene& scene, const SimpleMove& m);

// Certifies each segment with its accumulated start pose; the first
// non-free segment verdict is returned with t rescaled into [0,1]
// across the whole move.
SweepVerdict certify_piecewise(const Scene& scene, const PiecewiseMove& m);

// Start pose of each segment, plus the final end pose (size l + 1).
std::vector<Pose2> piecewise_waypoints(const PiecewiseMove& m);

// Test-support verdict via uniform dense sampling (no certification):
// returns true iff none of `samples` poses along the move intersects.
bool dense_sample_free(const Scene& scene, const SimpleMove& m, int samples);

}  // namespace cage
