#ifndef SEE_SIM_CONFIG_HPP_
#define SEE_SIM_CONFIG_HPP_

#include "see/geometry.hpp"
#include "see/params.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace see::sim {

enum class TimingMode { Wall, None };

/// Experiment description loaded from a `key = value` file. See
/// README.md for the keys.
struct ExperimentConfig {
    std::string mesh;  ///< path (resolved against the config file) or builtin:sphere:<r>
    std::optional<Vec3> scale_box;
    SensorIntrinsics sensor = SensorIntrinsics::rgbd_camera();
    std::string sensor_name = "rgbd";
    std::string model = "small";
    /// User-level parameters before derivation (zeros are unset).
    ObservationParams partial = ObservationParams::small_model();
    std::uint64_t seed_first = 1;
    int seeds = 1;
    int max_views = 400;
    int max_adjustments_per_frontier = 10;
    std::optional<Point> initial_position;
    std::optional<Point> initial_target;
    TimingMode timing = TimingMode::Wall;
    bool write_plots = true;

    /// Fully derived parameters.
    ObservationParams params() const;
};

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// `key = value` lines describing a config, parameters fully derived.
void write_config_echo(std::ostream& out, const ExperimentConfig& config);

}  // namespace see::sim

#endif  // SEE_SIM_CONFIG_HPP_
