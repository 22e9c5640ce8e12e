#ifndef REEBKIT_LINALG_HPP
#define REEBKIT_LINALG_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "reebkit/errors.hpp"

// Small fixed-size real linear algebra. Everything is a value type and every
// routine is closed-form; no external solver is involved anywhere in the
// toolkit's numerical cross-checks.

namespace reebkit {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Mat2 {
    // row-major entries
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c};
    }
    static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }

    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
};

inline double det(const Mat2& m) { return m.a11 * m.a22 - m.a12 * m.a21; }
inline double trace(const Mat2& m) { return m.a11 + m.a22; }
inline Mat2 transpose(const Mat2& m) { return {m.a11, m.a21, m.a12, m.a22}; }

inline Mat2 inverse(const Mat2& m) {
    const double d = det(m);
    if (std::fabs(d) < 1e-300) throw SingularSystem("2x2 inverse of a singular matrix");
    const double inv = 1.0 / d;
    return {m.a22 * inv, -m.a12 * inv, -m.a21 * inv, m.a11 * inv};
}

inline double frobenius_norm(const Mat2& m) {
    return std::sqrt(m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22);
}

// Largest singular value.
inline double operator_norm(const Mat2& m) {
    const double p = m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22;
    const double q = det(m) * det(m);
    const double disc = std::max(0.0, p * p - 4.0 * q);
    return std::sqrt(0.5 * (p + std::sqrt(disc)));
}

// Eigenvalues of a symmetric 2x2 [[a,b],[b,c]].
inline std::array<double, 2> sym_eigenvalues(double a, double b, double c) {
    const double mean = 0.5 * (a + c);
    const double r = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return {mean - r, mean + r};
}

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct Mat3 {
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

    static Mat3 identity() {
        Mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }

    double operator()(int i, int j) const { return m[i][j]; }
    double& operator()(int i, int j) { return m[i][j]; }

    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat3 operator-(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j] * s;
        return r;
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
                r.m[i][j] = s;
            }
        return r;
    }
    Vec3 operator*(Vec3 v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
};

inline double det(const Mat3& a) {
    return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
           a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
           a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}

// Gaussian elimination with partial pivoting; throws SingularSystem when the
// pivot collapses relative to the matrix scale.
inline Vec3 solve3(const Mat3& a, Vec3 b) {
    double aug[3][4] = {{a.m[0][0], a.m[0][1], a.m[0][2], b.x},
                        {a.m[1][0], a.m[1][1], a.m[1][2], b.y},
                        {a.m[2][0], a.m[2][1], a.m[2][2], b.z}};
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(aug[i][j]));
    if (scale == 0.0) throw SingularSystem("zero 3x3 system");

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
        if (std::fabs(aug[pivot][col]) < 1e-13 * scale)
            throw SingularSystem("3x3 solve: pivot below 1e-13 of matrix scale");
        if (pivot != col)
            for (int j = 0; j < 4; ++j) std::swap(aug[pivot][j], aug[col][j]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = aug[r][col] / aug[col][col];
            for (int j = col; j < 4; ++j) aug[r][j] -= f * aug[col][j];
        }
    }
    return {aug[0][3] / aug[0][0], aug[1][3] / aug[1][1], aug[2][3] / aug[2][2]};
}

inline Mat3 inverse(const Mat3& a) {
    const double d = det(a);
    if (std::fabs(d) < 1e-300) throw SingularSystem("3x3 inverse of a singular matrix");
    Mat3 r;
    r.m[0][0] = (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) / d;
    r.m[0][1] = (a.m[0][2] * a.m[2][1] - a.m[0][1] * a.m[2][2]) / d;
    r.m[0][2] = (a.m[0][1] * a.m[1][2] - a.m[0][2] * a.m[1][1]) / d;
    r.m[1][0] = (a.m[1][2] * a.m[2][0] - a.m[1][0] * a.m[2][2]) / d;
    r.m[1][1] = (a.m[0][0] * a.m[2][2] - a.m[0][2] * a.m[2][0]) / d;
    r.m[1][2] = (a.m[0][2] * a.m[1][0] - a.m[0][0] * a.m[1][2]) / d;
    r.m[2][0] = (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]) / d;
    r.m[2][1] = (a.m[0][1] * a.m[2][0] - a.m[0][0] * a.m[2][1]) / d;
    r.m[2][2] = (a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0]) / d;
    return r;
}

inline constexpr double kPi = 3.14159265358979323846;

// Wrap into (-pi, pi].
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

} // namespace reebkit

#endif // REEBKIT_LINALG_HPP
