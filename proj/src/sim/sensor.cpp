#include "see/sim/sensor.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace see::sim {

CameraFrame camera_frame(const UnitVector& orientation) {
    const Vec3 f = orientation.vec();
    Vec3 right = f.cross(Vec3::UnitZ());
    if (right.norm() < 1e-9) right = f.cross(Vec3::UnitX());
    right.normalize();
    return {f, right, right.cross(f)};
}

std::vector<Vec3> pixel_rays(const SensorIntrinsics& in, const UnitVector& orientation) {
    in.validate();
    const CameraFrame cam = camera_frame(orientation);
    const double fx = in.fov_x_deg * std::numbers::pi / 180.0;
    const double fy = in.fov_y_deg * std::numbers::pi / 180.0;
    std::vector<double> tx(static_cast<std::size_t>(in.width_px));
    std::vector<double> ty(static_cast<std::size_t>(in.height_px));
    for (int i = 0; i < in.width_px; ++i) tx[i] = std::tan(((i + 0.5) / in.width_px - 0.5) * fx);
    for (int j = 0; j < in.height_px; ++j) ty[j] = std::tan((0.5 - (j + 0.5) / in.height_px) * fy);
    std::vector<Vec3> rays;
    rays.reserve(tx.size() * ty.size());
    for (int j = 0; j < in.height_px; ++j) {
        for (int i = 0; i < in.width_px; ++i) {
            rays.push_back((cam.forward + tx[i] * cam.right + ty[j] * cam.up).normalized());
        }
    }
    return rays;
}

SimSensor::SimSensor(const SceneMesh& mesh, const SensorIntrinsics& intrinsics, std::uint64_t seed)
    : bvh_(mesh), intrinsics_(intrinsics), rng_(seed) {
    intrinsics_.validate();
}

std::vector<double> SimSensor::ranges(const View& view) const {
    const std::vector<Vec3> rays = pixel_rays(intrinsics_, view.orientation);
    std::vector<double> out(rays.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (const auto hit = bvh_.intersect(view.position, rays[i])) out[i] = hit->distance;
    }
    return out;
}

std::vector<Point> SimSensor::capture(const View& view) {
    const std::vector<Vec3> rays = pixel_rays(intrinsics_, view.orientation);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double sigma = intrinsics_.range_noise_sigma;
    std::vector<Point> points;
    for (const Vec3& ray : rays) {
        const auto hit = bvh_.intersect(view.position, ray);
        if (!hit) continue;
        const double range = sigma > 0.0 ? hit->distance + sigma * noise(rng_) : hit->distance;
        points.push_back(view.position + range * ray);
    }
    return points;
}

}  // namespace see::sim
