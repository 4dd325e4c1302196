#ifndef SEE_SIM_SENSOR_HPP_
#define SEE_SIM_SENSOR_HPP_

#include "see/params.hpp"
#include "see/planner.hpp"
#include "see/sim/bvh.hpp"
#include "see/sim/mesh.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace see::sim {

/// Orthonormal camera axes for a viewing direction. Right is horizontal
/// (perpendicular to world z) unless the view looks straight up or down.
struct CameraFrame {
    Vec3 forward;
    Vec3 right;
    Vec3 up;
};
CameraFrame camera_frame(const UnitVector& orientation);

/// Unit ray directions through pixel centres on a uniform angular grid,
/// row-major from the top-left pixel.
std::vector<Vec3> pixel_rays(const SensorIntrinsics& intrinsics, const UnitVector& orientation);

/// Simulated depth sensor raycasting a mesh with Gaussian range noise along
/// each ray. Successive captures draw from one seeded stream.
class SimSensor : public MeasurementSource {
public:
    SimSensor(const SceneMesh& mesh, const SensorIntrinsics& intrinsics, std::uint64_t seed);

    std::vector<Point> capture(const View& view) override;

    /// Hit distances along each pixel ray (NaN for misses), noise free.
    std::vector<double> ranges(const View& view) const;

    const SensorIntrinsics& intrinsics() const { return intrinsics_; }

private:
    Bvh bvh_;
    SensorIntrinsics intrinsics_;
    std::mt19937_64 rng_;
};

}  // namespace see::sim

#endif  // SEE_SIM_SENSOR_HPP_
