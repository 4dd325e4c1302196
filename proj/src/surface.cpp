#include "see/surface.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <iostream>

namespace see {

Mat3 SurfaceFrame::basis() const {
    Mat3 c;
    c.col(0) = normal.vec();
    c.col(1) = frontier.vec();
    c.col(2) = boundary.vec();
    return c;
}

SymmetricEigen eigen_symmetric(const Mat3& a) {
    Eigen::SelfAdjointEigenSolver<Mat3> solver(a);
    if (solver.info() != Eigen::Success) throw DegenerateGeometryError("eigendecomposition failed");
    SymmetricEigen out;
    for (int i = 0; i < 3; ++i) {
        out.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
        out.vectors[static_cast<std::size_t>(i)] = solver.eigenvectors().col(i);
    }
    return out;
}

ProjectedMeasurements::ProjectedMeasurements(const Point& view_position, std::span<const Point> measurements,
                                             double search_radius)
    : origin_(view_position), radius_(search_radius), grid_(search_radius) {
    ranges_.reserve(measurements.size());
    for (const Point& p : measurements) {
        const Vec3 ray = p - origin_;
        const double range = ray.norm();
        if (!(range > 0.0)) continue;
        grid_.insert(static_cast<PointId>(ranges_.size()), ray / range);
        ranges_.push_back(range);
    }
}

bool ProjectedMeasurements::any_near(const Vec3& direction, double max_range) const {
    bool found = false;
    grid_.for_each_within(direction, radius_, [&](const SpatialHashGrid::Entry& e) {
        found = ranges_[e.id] < max_range;
        return !found;
    });
    return found;
}

NormalDirection direct_normal(const View& current_view, const Point& frontier, const UnitVector& candidate,
                              const ProjectedMeasurements& projected, const ObservationParams& params) {
    const double step = params.visibility_distance;
    const auto max_steps = static_cast<int>(std::ceil(params.occlusion_distance / step - 1e-9));
    Vec3 w_pos = frontier - current_view.position;
    Vec3 w_neg = w_pos;
    bool pos_blocked = true;
    bool neg_blocked = true;
    for (int i = 0; i < std::max(max_steps, 1); ++i) {
        w_pos += step * candidate.vec();
        w_neg -= step * candidate.vec();
        const double pos_range = w_pos.norm();
        const double neg_range = w_neg.norm();
        // Each side is tested only against measurements nearer than its own sample.
        pos_blocked = pos_range > 0.0 && projected.any_near(w_pos / pos_range, pos_range);
        neg_blocked = neg_range > 0.0 && projected.any_near(w_neg / neg_range, neg_range);
        if (!pos_blocked || !neg_blocked) break;
    }
    if (pos_blocked && neg_blocked) return {candidate, false};
    if (pos_blocked && !neg_blocked) return {-candidate, true};
    return {candidate, true};
}

NormalDirection direct_normal(const View& current_view, const Point& frontier, const UnitVector& candidate,
                              std::span<const Point> new_points, const ObservationParams& params) {
    const ProjectedMeasurements projected(current_view.position, new_points, params.visibility_distance);
    return direct_normal(current_view, frontier, candidate, projected, params);
}

SurfaceFrame estimate_surface(const ObservedCloud& cloud, const Point& frontier, const View& current_view,
                              const ProjectedMeasurements& projected, const ObservationParams& params) {
    const double r = params.resolution_radius;
    Mat3 a = Mat3::Zero();
    Vec3 mean_offset = Vec3::Zero();
    std::size_t n = 0;
    bool frontier_stored = false;
    cloud.for_each_within(frontier, r, [&](const SpatialHashGrid::Entry& e) {
        const Vec3 d = e.position - frontier;
        a.noalias() += d * d.transpose();
        mean_offset -= d;
        frontier_stored = frontier_stored || d.isZero(0.0);
        ++n;
    });
    if (!frontier_stored) ++n;  // the frontier itself contributes a zero column
    if (n < 3) throw DegenerateGeometryError("surface estimate needs at least three neighbors");
    mean_offset /= static_cast<double>(n);

    const SymmetricEigen eig = eigen_symmetric(a);
    const double largest = eig.values[2];
    if (!(largest > 0.0) || eig.values[1] <= 1e-12 * largest) {
        throw DegenerateGeometryError("neighborhood is coincident or collinear");
    }

    const UnitVector candidate(eig.vectors[0]);
    const UnitVector normal = direct_normal(current_view, frontier, candidate, projected, params).normal;

    const double p1 = std::abs(mean_offset.dot(eig.vectors[1]));
    const double p2 = std::abs(mean_offset.dot(eig.vectors[2]));
    Vec3 f = p2 > p1 ? eig.vectors[2] : eig.vectors[1];
    if (mean_offset.norm() < 1e-9 * r) {
        std::clog << "see: symmetric neighborhood at frontier (" << frontier.transpose()
                  << "); frontier vector sign left as computed\n";
    } else if (mean_offset.dot(f) < 0.0) {
        f = -f;
    }
    const UnitVector fv(f);
    return SurfaceFrame{normal, fv, UnitVector(normal.vec().cross(fv.vec()))};
}

SurfaceFrame estimate_surface(const ObservedCloud& cloud, const Point& frontier, const View& current_view,
                              std::span<const Point> new_points, const ObservationParams& params) {
    const ProjectedMeasurements projected(current_view.position, new_points, params.visibility_distance);
    return estimate_surface(cloud, frontier, current_view, projected, params);
}

}  // namespace see
