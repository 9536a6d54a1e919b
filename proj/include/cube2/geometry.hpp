#pragma once

#include <cmath>
#include <random>

namespace cube2 {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double degrees(double deg) { return deg * kPi / 180.0; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

/// Rotation quaternion, scalar first.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    static Quaternion identity() { return {}; }
    static Quaternion from_axis_angle(Vec3 axis, double angle);

    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    Quaternion conj() const { return {w, -x, -y, -z}; }
    Quaternion normalized() const;
    Quaternion operator-() const { return {-w, -x, -y, -z}; }

    /// Rotates v by this (unit) quaternion.
    Vec3 rotate(Vec3 v) const;

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Rotation angle between two orientations, in [0, pi]; q and -q coincide.
double orientation_distance(const Quaternion& q, const Quaternion& target);

using Rng = std::mt19937_64;

/// Uniformly distributed rotation (Shoemake's subgroup algorithm).
Quaternion random_rotation(Rng& rng);
Vec3 random_unit_vector(Rng& rng);
/// Uniform point in the open ball of the given radius around `center`.
Vec3 random_point_in_ball(Vec3 center, double radius, Rng& rng);

}  // namespace cube2
