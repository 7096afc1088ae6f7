#pragma once

// Minimal fixed-size linear algebra for planar/spatial rigid motions.
// Only what the kinematics and geometry kernels need; no dynamic sizes.

#include <array>
#include <cmath>
#include <stdexcept>

namespace cage {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::sqrt(norm2(v)); }
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }
inline bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Row-major 2x2.
struct Mat2 {
    std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

    static Mat2 identity() { return {}; }
    static Mat2 zero() { return Mat2{{0.0, 0.0, 0.0, 0.0}}; }
    static Mat2 rotation(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return Mat2{{c, -s, s, c}};
    }
    // Matrix of the so(2) generator for angular rate theta.
    static Mat2 so2(double theta) { return Mat2{{0.0, -theta, theta, 0.0}}; }

    double operator()(int r, int c) const { return m[2 * r + c]; }
    double& operator()(int r, int c) { return m[2 * r + c]; }

    Vec2 operator*(const Vec2& v) const {
        return {m[0] * v.x + m[1] * v.y, m[2] * v.x + m[3] * v.y};
    }
    Mat2 operator*(const Mat2& o) const {
        return Mat2{{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                     m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
    }
    Mat2 operator+(const Mat2& o) const {
        return Mat2{{m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]}};
    }
    Mat2 operator-(const Mat2& o) const {
        return Mat2{{m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]}};
    }
    Mat2 operator*(double s) const { return Mat2{{m[0] * s, m[1] * s, m[2] * s, m[3] * s}}; }

    Mat2 transposed() const { return Mat2{{m[0], m[2], m[1], m[3]}}; }
    double det() const { return m[0] * m[3] - m[1] * m[2]; }
};

// Solves M x = b; throws on a singular matrix.
inline Vec2 solve(const Mat2& M, const Vec2& b) {
    const double d = M.det();
    if (d == 0.0)
        throw std::domain_error("singular 2x2 system");
    return {(M.m[3] * b.x - M.m[1] * b.y) / d, (-M.m[2] * b.x + M.m[0] * b.y) / d};
}

// Row-major 3x3.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }
    static Mat3 zero() { return Mat3{{0, 0, 0, 0, 0, 0, 0, 0, 0}}; }
    // Matrix of the so(3) generator: skew(w) v = w x v.
    static Mat3 so3(const Vec3& w) {
        return Mat3{{0, -w.z, w.y, w.z, 0, -w.x, -w.y, w.x, 0}};
    }
    static Mat3 outer(const Vec3& a, const Vec3& b) {
        return Mat3{{a.x * b.x, a.x * b.y, a.x * b.z,
                     a.y * b.x, a.y * b.y, a.y * b.z,
                     a.z * b.x, a.z * b.y, a.z * b.z}};
    }

    double operator()(int r, int c) const { return m[3 * r + c]; }
    double& operator()(int r, int c) { return m[3 * r + c]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r = zero();
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                const double a = m[3 * i + k];
                for (int j = 0; j < 3; ++j)
                    r.m[3 * i + j] += a * o.m[3 * k + j];
            }
        return r;
    }
    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] - o.m[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.m[i] = m[i] * s;
        return r;
    }

    Mat3 transposed() const {
        return Mat3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
    }
    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

// Solves M x = b by Gaussian elimination with partial pivoting.
inline Vec3 solve(const Mat3& M, const Vec3& b) {
    double a[3][4] = {{M.m[0], M.m[1], M.m[2], b.x},
                      {M.m[3], M.m[4], M.m[5], b.y},
                      {M.m[6], M.m[7], M.m[8], b.z}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0)
            throw std::domain_error("singular 3x3 system");
        if (piv != col)
            for (int c = 0; c < 4; ++c) std::swap(a[piv][c], a[col][c]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}
inline double max_abs_diff(const Mat3& a, const Mat3& b) {
    double d = 0.0;
    for (int i = 0; i < 9; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

}  // namespace cage
