#ifndef SEE_SURFACE_HPP_
#define SEE_SURFACE_HPP_

#include "see/geometry.hpp"
#include "see/observed_cloud.hpp"
#include "see/params.hpp"
#include "see/spatial_index.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

namespace see {

class DegenerateGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Local orthonormal frame at a frontier: surface normal, direction toward
/// the partially observed region, and the boundary tangent b = n x f.
struct SurfaceFrame {
    UnitVector normal;
    UnitVector frontier;
    UnitVector boundary;

    /// Columns (n, f, b).
    Mat3 basis() const;
};

/// Eigenpairs of a symmetric 3x3 matrix, eigenvalues ascending.
struct SymmetricEigen {
    std::array<double, 3> values;
    std::array<Vec3, 3> vectors;
};

SymmetricEigen eigen_symmetric(const Mat3& a);

/// Measurements of one capture projected onto the unit sphere around the
/// capturing view, indexed for chord-radius queries.
class ProjectedMeasurements {
public:
    ProjectedMeasurements(const Point& view_position, std::span<const Point> measurements, double search_radius);

    const Point& view_position() const { return origin_; }
    bool empty() const { return ranges_.empty(); }

    /// True if some measurement closer than `max_range` to the view projects
    /// within the search radius of `direction` (unit).
    bool any_near(const Vec3& direction, double max_range) const;

private:
    Point origin_;
    double radius_;
    std::vector<double> ranges_;
    SpatialHashGrid grid_;
};

struct NormalDirection {
    UnitVector normal;
    /// False when neither side cleared within the step budget.
    bool confident = true;
};

/// Picks the outward sign of `candidate` by walking samples along +/- the
/// normal from the frontier until one side projects free of nearer
/// measurements. Returns -candidate only if just the negative side is free.
NormalDirection direct_normal(const View& current_view, const Point& frontier, const UnitVector& candidate,
                              const ProjectedMeasurements& projected, const ObservationParams& params);

NormalDirection direct_normal(const View& current_view, const Point& frontier, const UnitVector& candidate,
                              std::span<const Point> new_points, const ObservationParams& params);

/// Frame from the eigendecomposition of the frontier's r-neighborhood, with
/// the normal sign fixed by direct_normal. Throws DegenerateGeometryError for
/// fewer than three points or collinear/coincident neighborhoods.
SurfaceFrame estimate_surface(const ObservedCloud& cloud, const Point& frontier, const View& current_view,
                              const ProjectedMeasurements& projected, const ObservationParams& params);

SurfaceFrame estimate_surface(const ObservedCloud& cloud, const Point& frontier, const View& current_view,
                              std::span<const Point> new_points, const ObservationParams& params);

}  // namespace see

#endif  // SEE_SURFACE_HPP_
