#include "see/geometry.hpp"

#include <cmath>

namespace see {

bool is_finite(const Vec3& v) {
    return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

UnitVector::UnitVector(const Vec3& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n == 0.0) {
        throw GeometryError("cannot normalize a zero or non-finite vector");
    }
    v_ = v / n;
}

View View::looking_at(const Point& position, const Point& target) {
    return View{position, UnitVector(target - position)};
}

bool Bounds::contains(const Point& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
}

Mat3 skew(const Vec3& u) {
    Mat3 m;
    m << 0.0, -u.z(), u.y(),
         u.z(), 0.0, -u.x(),
         -u.y(), u.x(), 0.0;
    return m;
}

Mat3 rodrigues(const UnitVector& axis, double angle) {
    if (angle == 0.0) {
        return Mat3::Identity();
    }
    const Mat3 k = skew(axis.vec());
    return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

}  // namespace see
