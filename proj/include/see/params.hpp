#ifndef SEE_PARAMS_HPP_
#define SEE_PARAMS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace see {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pinhole depth sensor description. Angles are in degrees.
struct SensorIntrinsics {
    int width_px = 0;
    int height_px = 0;
    double fov_x_deg = 0.0;
    double fov_y_deg = 0.0;
    /// Range noise standard deviation, meters. Only used by the simulator.
    double range_noise_sigma = 0.0;

    void validate() const;

    static SensorIntrinsics rgbd_camera();    ///< 848 x 480 px, 70 x 43 deg.
    static SensorIntrinsics rotating_lidar(); ///< 1200 x 800 px, 60 x 40 deg.
};

/// Full observation parameter set. Zero marks an unset density, resolution
/// radius, view distance or minimum separation before derivation.
struct ObservationParams {
    double density = 0.0;              ///< rho, points per m^3
    double resolution_radius = 0.0;    ///< r, m
    double view_distance = 0.0;        ///< d, m
    double min_separation = 0.0;       ///< epsilon, m
    double occlusion_distance = 0.0;   ///< psi, m
    double visibility_distance = 0.0;  ///< upsilon, m
    int view_updates = 0;              ///< tau
    std::int64_t k_min = 0;
    double registration_radius = 0.0;  ///< eta, m (evaluation only)

    /// Throws ConfigError unless every invariant of a derived set holds.
    void validate() const;

    /// Defaults for objects that fit in a 0.8 x 0.8 x 0.6 m box (rho derived).
    static ObservationParams small_model();
    /// Defaults for 40 m scale scenes (d derived).
    static ObservationParams large_model();
};

/// ceil(4/3 pi rho r^3): points an r-ball holds at density rho.
std::int64_t core_threshold(double density, double resolution_radius);

/// Fills unset rho, r, d and epsilon from the others and the sensor, then
/// sets k_min. User-set fields are left untouched. Throws ConfigError when a
/// field cannot be resolved or the view distance formula has no real root.
ObservationParams derive_params(const ObservationParams& partial, const SensorIntrinsics& sensor);

}  // namespace see

#endif  // SEE_PARAMS_HPP_
