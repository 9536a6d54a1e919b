#include "cube2/geometry.hpp"

#include <algorithm>

namespace cube2 {

Quaternion Quaternion::from_axis_angle(Vec3 axis, double angle) {
    double n = cube2::norm(axis);
    double s = std::sin(angle / 2.0) / n;
    return {std::cos(angle / 2.0), axis.x * s, axis.y * s, axis.z * s};
}

Quaternion Quaternion::normalized() const {
    double n = norm();
    return {w / n, x / n, y / n, z / n};
}

Vec3 Quaternion::rotate(Vec3 v) const {
    Quaternion p{0.0, v.x, v.y, v.z};
    Quaternion r = (*this) * p * conj();
    return {r.x, r.y, r.z};
}

double orientation_distance(const Quaternion& q, const Quaternion& target) {
    Quaternion d = target * q.conj();
    double re = std::clamp(std::abs(d.w), 0.0, 1.0);
    return 2.0 * std::acos(re);
}

Quaternion random_rotation(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double u1 = u(rng), u2 = u(rng), u3 = u(rng);
    double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    return {a * std::sin(2.0 * kPi * u2), a * std::cos(2.0 * kPi * u2),
            b * std::sin(2.0 * kPi * u3), b * std::cos(2.0 * kPi * u3)};
}

Vec3 random_unit_vector(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        Vec3 v{n(rng), n(rng), n(rng)};
        double len = norm(v);
        if (len > 1e-12) return (1.0 / len) * v;
    }
}

Vec3 random_point_in_ball(Vec3 center, double radius, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = radius * std::cbrt(u(rng));
    return center + r * random_unit_vector(rng);
}

}  // namespace cube2
