#include "see/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace see {

namespace {

double half_tan_deg(double deg) {
    return std::tan(0.5 * deg * std::numbers::pi / 180.0);
}

}  // namespace

void SensorIntrinsics::validate() const {
    if (width_px < 1 || height_px < 1) throw ConfigError("sensor resolution must be at least 1 x 1 pixels");
    if (!(fov_x_deg > 0.0 && fov_x_deg < 180.0) || !(fov_y_deg > 0.0 && fov_y_deg < 180.0)) {
        throw ConfigError("sensor field of view must lie strictly between 0 and 180 degrees");
    }
    if (!(range_noise_sigma >= 0.0)) throw ConfigError("sensor noise sigma must be non-negative");
}

SensorIntrinsics SensorIntrinsics::rgbd_camera() {
    return SensorIntrinsics{848, 480, 70.0, 43.0, 0.01};
}

SensorIntrinsics SensorIntrinsics::rotating_lidar() {
    return SensorIntrinsics{1200, 800, 60.0, 40.0, 0.01};
}

void ObservationParams::validate() const {
    std::ostringstream err;
    if (!(density > 0.0)) err << "density must be positive; ";
    if (!(min_separation > 0.0 && min_separation < resolution_radius && resolution_radius < occlusion_distance)) {
        err << "require 0 < min_separation < resolution_radius < occlusion_distance; ";
    }
    if (!(visibility_distance > 0.0 && visibility_distance <= resolution_radius)) {
        err << "require 0 < visibility_distance <= resolution_radius; ";
    }
    if (!(view_distance > 0.0)) err << "view_distance must be positive; ";
    if (view_updates < 1) err << "view_updates must be at least 1; ";
    if (k_min < 1) err << "k_min must be at least 1; ";
    else if (density > 0.0 && resolution_radius > 0.0 && k_min != core_threshold(density, resolution_radius)) {
        err << "k_min must equal ceil(4/3 pi rho r^3); ";
    }
    const std::string msg = err.str();
    if (!msg.empty()) throw ConfigError("invalid observation parameters: " + msg.substr(0, msg.size() - 2));
}

ObservationParams ObservationParams::small_model() {
    ObservationParams p;
    p.resolution_radius = 0.03;
    p.view_distance = 0.5;
    p.occlusion_distance = 0.5;
    p.visibility_distance = 0.01;
    p.view_updates = 100;
    p.registration_radius = 0.005;
    return p;
}

ObservationParams ObservationParams::large_model() {
    ObservationParams p;
    p.density = 300.0;
    p.resolution_radius = 0.15;
    p.occlusion_distance = 20.0;
    p.visibility_distance = 0.15;
    p.view_updates = 100;
    p.registration_radius = 0.05;
    return p;
}

std::int64_t core_threshold(double density, double resolution_radius) {
    const double r = resolution_radius;
    return static_cast<std::int64_t>(std::ceil(4.0 / 3.0 * std::numbers::pi * density * r * r * r));
}

ObservationParams derive_params(const ObservationParams& partial, const SensorIntrinsics& sensor) {
    sensor.validate();
    ObservationParams p = partial;
    const double pixels = static_cast<double>(sensor.width_px) * static_cast<double>(sensor.height_px);
    const double tan_product = half_tan_deg(sensor.fov_x_deg) * half_tan_deg(sensor.fov_y_deg);
    constexpr double pi = std::numbers::pi;

    if (p.resolution_radius == 0.0 && p.density != 0.0) {
        p.resolution_radius = std::cbrt(9.0 / (4.0 * pi * p.density));
    }
    if (p.density == 0.0 && p.view_distance != 0.0 && p.resolution_radius != 0.0) {
        const double d = p.view_distance;
        const double r = p.resolution_radius;
        p.density = pixels / (4.0 * tan_product * (3.0 * d * d + 2.0 * r * r));
    }
    if (p.view_distance == 0.0 && p.density != 0.0 && p.resolution_radius != 0.0) {
        const double r = p.resolution_radius;
        const double radicand = pixels / (12.0 * p.density * tan_product) - 2.0 * r * r / 3.0;
        if (!(radicand >= 0.0)) {
            std::ostringstream msg;
            msg << "no real view distance for density " << p.density << " and resolution radius " << r
                << " with this sensor (radicand " << radicand << ")";
            throw ConfigError(msg.str());
        }
        p.view_distance = std::sqrt(radicand);
    }

    if (p.density == 0.0 || p.resolution_radius == 0.0 || p.view_distance == 0.0) {
        std::ostringstream msg;
        msg << "cannot resolve parameters: need two of density, resolution_radius and view_distance (unset:";
        if (p.density == 0.0) msg << " density";
        if (p.resolution_radius == 0.0) msg << " resolution_radius";
        if (p.view_distance == 0.0) msg << " view_distance";
        msg << ")";
        throw ConfigError(msg.str());
    }

    if (p.min_separation == 0.0) {
        p.min_separation = std::cbrt(3.0 * p.resolution_radius / (2.0 * pi * p.density));
    }
    p.k_min = core_threshold(p.density, p.resolution_radius);
    return p;
}

}  // namespace see
