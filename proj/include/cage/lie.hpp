#pragma once

// se(n) / SE(n) kinematics for n = 2, 3: twist exponential, logarithm
// branches, the v_t(w) translation factor, and screw decomposition.
//
// A twist g = (xi, w) generates the one-parameter motion
//   exp(t g) : x  ->  e^{t w} x + v_t(w) xi,     v_t(w) = integral_0^t e^{s w} ds,
// which is a rotation about a fixed center, a translation, or a mixed
// screw depending on the kernel split of xi (see screw_decompose).

#include <optional>

#include "cage/vec.hpp"

namespace cage {

// Below this rotation magnitude (|theta| * t) the closed form of v_t is
// evaluated as a truncated power series to avoid cancellation.
inline constexpr double kVFactorSeriesSwitch = 1e-4;
inline constexpr int kVFactorSeriesTerms = 12;

struct Twist2 {
    Vec2 xi;             // translation generator
    double omega = 0.0;  // rotation rate theta (radians); stands for the
                         // antisymmetric matrix [[0,-theta],[theta,0]]
};

struct Twist3 {
    Vec3 xi;    // translation generator
    Vec3 omega; // axis * angle (radians); stands for skew(omega)
};

struct Pose2 {
    Mat2 rotation;    // element of SO(2)
    Vec2 translation;

    static Pose2 identity() { return {}; }
    static Pose2 from_xytheta(double x, double y, double theta) {
        return {Mat2::rotation(theta), {x, y}};
    }

    Vec2 apply(const Vec2& p) const { return rotation * p + translation; }
};

struct Pose3 {
    Mat3 rotation;
    Vec3 translation;

    static Pose3 identity() { return {}; }
    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

// xi = w xi0 + xi1 with xi1 in ker w.  For a rotation component, -xi0 is
// the fixed center of the screw.
struct Screw2 {
    Vec2 center_offset;       // xi0
    Vec2 kernel_translation;  // xi1 (always zero for n = 2 with theta != 0)
    bool is_pure_translation = false;
};

struct Screw3 {
    Vec3 center_offset;
    Vec3 kernel_translation;
    bool is_pure_translation = false;
};

// v_t(w) = integral_0^t e^{s w} ds.  Closed form when |theta|*t is above
// kVFactorSeriesSwitch, truncated series below.  Throws
// std::invalid_argument("invalid generator") on non-finite input.
Mat2 v_factor(double omega, double t);
Mat3 v_factor(const Vec3& omega, double t);

// exp(t g) as a pose: rotation e^{t w}, translation v_t(w) xi.
Pose2 exp_twist(const Twist2& g, double t);
Pose3 exp_twist(const Twist3& g, double t);

// Rotation angle of p in (-pi, pi].
double principal_angle(const Pose2& p);

// Logarithm on branch k: rotation angle theta = principal_angle + 2 pi k.
// Empty when the branch carries no screw (theta = 2 pi k, k != 0, with a
// nonzero translation: v_1 is singular and u is outside its image).
std::optional<Twist2> try_log_pose(const Pose2& p, int branch);

// Throwing wrapper: "no screw on this branch" when try_log_pose is empty.
Twist2 log_pose(const Pose2& p, int branch);

// n = 3 logarithm, principal branch only (branch must be 0).
Twist3 log_pose(const Pose3& p, int branch = 0);

Screw2 screw_decompose(const Twist2& g);
Screw3 screw_decompose(const Twist3& g);

// Point carried along the orbit: exp_twist(g, t) composed with start,
// applied to x.
Vec2 orbit_point(const Twist2& g, const Pose2& start, const Vec2& x, double t);
Vec3 orbit_point(const Twist3& g, const Pose3& start, const Vec3& x, double t);

Pose2 compose(const Pose2& p, const Pose2& q);  // p after q
Pose3 compose(const Pose3& p, const Pose3& q);
Pose2 inverse(const Pose2& p);
Pose3 inverse(const Pose3& p);

// SO(n) membership check: ||A^T A - I||_inf and |det A - 1| within tol.
bool is_valid_pose(const Pose2& p, double tol = 1e-9);
bool is_valid_pose(const Pose3& p, double tol = 1e-9);

bool finite(const Twist2& g);
bool finite(const Twist3& g);

}  // namespace cage
