#ifndef SEE_GEOMETRY_HPP_
#define SEE_GEOMETRY_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <stdexcept>

namespace see {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A measurement or position in the world frame, meters.
using Point = Vec3;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_finite(const Vec3& v);

/// Direction with unit Euclidean norm. Construction normalizes and rejects
/// zero-length or non-finite input.
class UnitVector {
public:
    explicit UnitVector(const Vec3& v);
    UnitVector(double x, double y, double z) : UnitVector(Vec3(x, y, z)) {}

    const Vec3& vec() const { return v_; }
    operator const Vec3&() const { return v_; }
    double dot(const Vec3& o) const { return v_.dot(o); }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

    UnitVector operator-() const { return UnitVector(-v_, Normalized{}); }

private:
    struct Normalized {};
    UnitVector(const Vec3& v, Normalized) : v_(v) {}

    Vec3 v_;
};

/// Sensor pose: position and a unit viewing direction.
struct View {
    Point position;
    UnitVector orientation;

    /// View at `position` looking at `target`.
    static View looking_at(const Point& position, const Point& target);
};

/// Axis-aligned box, closed on all faces.
struct Bounds {
    Vec3 min;
    Vec3 max;

    bool contains(const Point& p) const;
    Vec3 extent() const { return max - min; }
    Vec3 center() const { return 0.5 * (min + max); }
};

/// Skew-symmetric cross-product matrix, u^x v = u x v.
Mat3 skew(const Vec3& u);

/// Rotation by `angle` radians about `axis`, R = I + sin(a) u^x + (1 - cos(a)) (u^x)^2.
Mat3 rodrigues(const UnitVector& axis, double angle);

}  // namespace see

#endif  // SEE_GEOMETRY_HPP_
