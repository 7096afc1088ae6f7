#include "cage/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace cage {

namespace {

constexpr double kPi = 3.14159265358979323846;

template <typename Mat>
Mat v_factor_series(const Mat& W, double t) {
    // sum_{k>=0} t^{k+1} W^k / (k+1)!
    Mat term = Mat::identity() * t;  // k = 0
    Mat sum = term;
    for (int k = 1; k < kVFactorSeriesTerms; ++k) {
        term = (term * W) * (t / double(k + 1));
        sum = sum + term;
    }
    return sum;
}

}  // namespace

bool finite(const Twist2& g) { return finite(g.xi) && std::isfinite(g.omega); }
bool finite(const Twist3& g) { return finite(g.xi) && finite(g.omega); }

Mat2 v_factor(double omega, double t) {
    if (!std::isfinite(omega) || !std::isfinite(t))
        throw std::invalid_argument("invalid generator");
    const double x = std::abs(omega) * t;
    if (x < kVFactorSeriesSwitch)
        return v_factor_series(Mat2::so2(omega), t);
    // (e^{t w} - I) w^{-1} for w = [[0,-theta],[theta,0]]
    const double c = std::cos(t * omega), s = std::sin(t * omega);
    return Mat2{{s / omega, (c - 1.0) / omega, (1.0 - c) / omega, s / omega}};
}

Mat3 v_factor(const Vec3& omega, double t) {
    if (!finite(omega) || !std::isfinite(t))
        throw std::invalid_argument("invalid generator");
    const double theta = norm(omega);
    const double x = theta * t;
    if (x < kVFactorSeriesSwitch)
        return v_factor_series(Mat3::so3(omega), t);
    // so(3) is never regular, so the planar (e^{tw}-I)w^{-1} form does not
    // apply; split R^3 = im(w) + ker(w) instead.  On the axis v_t acts as
    // t I, on the orthogonal plane as the planar closed form.
    const Vec3 a = omega * (1.0 / theta);
    const double c = std::cos(x), s = std::sin(x);
    const Mat3 A = Mat3::so3(a);
    return Mat3::identity() * (s / theta) + Mat3::outer(a, a) * (t - s / theta) +
           A * ((1.0 - c) / theta);
}

Pose2 exp_twist(const Twist2& g, double t) {
    if (!finite(g) || !std::isfinite(t))
        throw std::invalid_argument("invalid generator");
    return {Mat2::rotation(t * g.omega), v_factor(g.omega, t) * g.xi};
}

Pose3 exp_twist(const Twist3& g, double t) {
    if (!finite(g) || !std::isfinite(t))
        throw std::invalid_argument("invalid generator");
    const double theta = norm(g.omega);
    Mat3 R;
    if (theta * std::abs(t) < kVFactorSeriesSwitch) {
        // Rodrigues with series coefficients; exact identity at t = 0.
        const Mat3 W = Mat3::so3(g.omega * t);
        const Mat3 W2 = W * W;
        R = Mat3::identity() + W + W2 * 0.5 + (W2 * W) * (1.0 / 6.0);
    } else {
        const Vec3 a = g.omega * (1.0 / theta);
        const double x = theta * t;
        const Mat3 A = Mat3::so3(a);
        R = Mat3::identity() + A * std::sin(x) + (A * A) * (1.0 - std::cos(x));
    }
    return {R, v_factor(g.omega, t) * g.xi};
}

double principal_angle(const Pose2& p) {
    double th = std::atan2(p.rotation(1, 0), p.rotation(0, 0));
    if (th <= -kPi) th = kPi;  // atan2(-0, -1) -> fold onto (-pi, pi]
    return th;
}

std::optional<Twist2> try_log_pose(const Pose2& p, int branch) {
    const double base = principal_angle(p);
    const double theta = base + 2.0 * kPi * branch;
    if (theta == 0.0)
        return Twist2{p.translation, 0.0};  // pure translation
    if (std::abs(base) < 1e-15 && branch != 0) {
        // theta = 2 pi k, k != 0: v_1 is the zero matrix, so only the
        // identity translation lies on this branch.
        if (norm(p.translation) > 1e-12)
            return std::nullopt;
        return Twist2{{0.0, 0.0}, theta};
    }
    const Vec2 xi = solve(v_factor(theta, 1.0), p.translation);
    return Twist2{xi, theta};
}

Twist2 log_pose(const Pose2& p, int branch) {
    auto g = try_log_pose(p, branch);
    if (!g)
        throw std::domain_error("no screw on this branch");
    return *g;
}

Twist3 log_pose(const Pose3& p, int branch) {
    if (branch != 0)
        throw std::domain_error("n=3 logarithm supports only the principal branch");
    const Mat3& R = p.rotation;
    const double tr = R(0, 0) + R(1, 1) + R(2, 2);
    const double c = std::max(-1.0, std::min(1.0, (tr - 1.0) * 0.5));
    const double phi = std::acos(c);
    Vec3 w;
    if (phi < 1e-8) {
        // near identity: first-order vee of the skew part
        w = Vec3{(R(2, 1) - R(1, 2)) * 0.5, (R(0, 2) - R(2, 0)) * 0.5,
                 (R(1, 0) - R(0, 1)) * 0.5};
    } else if (kPi - phi < 1e-6) {
        // angle pi: axis from the symmetric part, sign fixed by the largest
        // diagonal entry (both signs are valid logarithms)
        const Mat3 B = (R + Mat3::identity()) * 0.5;  // = a a^T at phi = pi
        int i = 0;
        if (B(1, 1) > B(i, i)) i = 1;
        if (B(2, 2) > B(i, i)) i = 2;
        Vec3 a{B(0, i), B(1, i), B(2, i)};
        a = a * (1.0 / std::sqrt(std::max(B(i, i), 1e-30)));
        w = a * phi;
    } else {
        const double f = phi / (2.0 * std::sin(phi));
        w = Vec3{(R(2, 1) - R(1, 2)) * f, (R(0, 2) - R(2, 0)) * f,
                 (R(1, 0) - R(0, 1)) * f};
    }
    // v_1(w) is invertible for phi in [0, pi]
    const Vec3 xi = solve(v_factor(w, 1.0), p.translation);
    return Twist3{xi, w};
}

Screw2 screw_decompose(const Twist2& g) {
    if (!finite(g))
        throw std::invalid_argument("invalid generator");
    if (g.omega == 0.0)
        return Screw2{{0.0, 0.0}, g.xi, true};
    // w^{-1} xi for w = [[0,-theta],[theta,0]]; ker w is trivial
    return Screw2{{g.xi.y / g.omega, -g.xi.x / g.omega}, {0.0, 0.0}, false};
}

Screw3 screw_decompose(const Twist3& g) {
    if (!finite(g))
        throw std::invalid_argument("invalid generator");
    const double theta2 = norm2(g.omega);
    if (theta2 == 0.0)
        return Screw3{{0, 0, 0}, g.xi, true};
    const Vec3 a = g.omega * (1.0 / std::sqrt(theta2));
    const Vec3 xi1 = a * dot(g.xi, a);       // projection onto ker w = span(a)
    const Vec3 xi_perp = g.xi - xi1;
    const Vec3 xi0 = cross(xi_perp, g.omega) * (1.0 / theta2);
    return Screw3{xi0, xi1, false};
}

Vec2 orbit_point(const Twist2& g, const Pose2& start, const Vec2& x, double t) {
    return compose(exp_twist(g, t), start).apply(x);
}

Vec3 orbit_point(const Twist3& g, const Pose3& start, const Vec3& x, double t) {
    return compose(exp_twist(g, t), start).apply(x);
}

Pose2 compose(const Pose2& p, const Pose2& q) {
    return {p.rotation * q.rotation, p.rotation * q.translation + p.translation};
}

Pose3 compose(const Pose3& p, const Pose3& q) {
    return {p.rotation * q.rotation, p.rotation * q.translation + p.translation};
}

Pose2 inverse(const Pose2& p) {
    const Mat2 Rt = p.rotation.transposed();
    return {Rt, -(Rt * p.translation)};
}

Pose3 inverse(const Pose3& p) {
    const Mat3 Rt = p.rotation.transposed();
    return {Rt, -(Rt * p.translation)};
}

bool is_valid_pose(const Pose2& p, double tol) {
    if (!finite(p.translation)) return false;
    const Mat2 G = p.rotation.transposed() * p.rotation;
    return max_abs_diff(G, Mat2::identity()) <= tol &&
           std::abs(p.rotation.det() - 1.0) <= tol;
}

bool is_valid_pose(const Pose3& p, double tol) {
    if (!finite(p.translation)) return false;
    const Mat3 G = p.rotation.transposed() * p.rotation;
    return max_abs_diff(G, Mat3::identity()) <= tol &&
           std::abs(p.rotation.det() - 1.0) <= tol;
}

}  // namespace cage
