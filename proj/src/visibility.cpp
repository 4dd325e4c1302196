#include "see/visibility.hpp"

#include <cmath>
#include <vector>

namespace see {

namespace {

// Sample balls are open: a point exactly upsilon away (the frontier itself
// for the first shell) does not count.
double open_ball(double upsilon) { return upsilon * (1.0 - 1e-9); }

}  // namespace

double visibility_offset(const ObservedCloud& cloud, const Point& frontier, const SurfaceFrame& frame,
                         const ObservationParams& params) {
    const double step = params.visibility_distance;
    const auto max_steps = static_cast<int>(std::ceil(params.occlusion_distance / step - 1e-9));
    int k = 0;
    do {
        ++k;
    } while (k < max_steps && cloud.any_within(frontier + (k * step) * frame.normal.vec(), open_ball(step)));
    return k * step;
}

bool is_occluded(const ObservedCloud& cloud, const Point& view_position, const Point& frontier, double offset,
                 const ObservationParams& params) {
    const Vec3 sight = frontier - view_position;
    const double len = sight.norm();
    if (!(len > 0.0)) return false;
    const Vec3 dir = sight / len;
    const double step = params.visibility_distance;
    const double ball = open_ball(step);
    const double psi = params.occlusion_distance;
    if (offset >= psi) return cloud.any_within(frontier - offset * dir, ball);
    for (int i = 0;; ++i) {
        const double t = offset + i * step;
        if (t >= psi) break;
        if (cloud.any_within(frontier - t * dir, ball)) return true;
    }
    return cloud.any_within(frontier - psi * dir, ball);
}

bool is_occluded(const ObservedCloud& cloud, const View& view, const Point& frontier, const SurfaceFrame& frame,
                 const ObservationParams& params) {
    return is_occluded(cloud, view.position, frontier, visibility_offset(cloud, frontier, frame, params), params);
}

View optimise_view(const ObservedCloud& cloud, const Point& frontier, const Point& capture_position,
                   const SurfaceFrame& frame, const ObservationParams& params) {
    return optimise_view_with_offset(cloud, frontier, capture_position,
                                     visibility_offset(cloud, frontier, frame, params), params);
}

View optimise_view_with_offset(const ObservedCloud& cloud, const Point& frontier, const Point& capture_position,
                               double offset, const ObservationParams& params) {
    const double d = params.view_distance;
    const UnitVector o_obs(frontier - capture_position);
    const Point c = frontier - offset * o_obs.vec();

    std::vector<Vec3> projected;
    cloud.for_each_within(frontier, params.occlusion_distance, [&](const SpatialHashGrid::Entry& e) {
        const Vec3 v = e.position - c;
        const double n = v.norm();
        if (n > 0.0) projected.push_back(v / n);
    });
    if (projected.empty()) return View{frontier - d * o_obs.vec(), o_obs};

    SphericalCapSolution cap;
    try {
        cap = solve_min_cap(projected, -o_obs);
    } catch (const OptimizationError& e) {
        cap = e.best();
    }
    // Full sphere: axis is the free direction and the view sits along it.
    // Hemisphere: axis is the cap centre and the view sits at its antipole.
    const UnitVector omega = cap.branch == CapBranch::FullSphere ? -cap.axis : cap.axis;
    return View{frontier - d * omega.vec(), omega};
}

}  // namespace see
