#ifndef SEE_SIM_EXPERIMENT_HPP_
#define SEE_SIM_EXPERIMENT_HPP_

#include "see/planner.hpp"
#include "see/sim/config.hpp"
#include "see/sim/mesh.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace see::sim {

struct TrialResult {
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    int views = 0;
    double coverage = 0.0;
    double distance_m = 0.0;
    double planning_time_s = 0.0;
    bool complete = false;
    std::size_t remaining_frontiers = 0;
    std::size_t points = 0;
    /// Coverage after each view.
    std::vector<double> coverage_curve;
};

struct ExperimentResult {
    std::vector<TrialResult> trials;
    std::size_t failures() const;
};

/// Mesh named by the config, scaled to its box when one is set.
SceneMesh load_experiment_mesh(const ExperimentConfig& config);

/// Configured initial view, or a seeded random direction at the bounding
/// sphere radius plus the view distance from the box centre, looking at it.
View initial_view(const SceneMesh& mesh, const ExperimentConfig& config, const ObservationParams& params,
                  std::uint64_t seed);

struct TrialOutputs {
    std::ostream* views_csv = nullptr;  ///< rows appended without header
    std::ostream* events = nullptr;     ///< line-delimited JSON
    std::optional<std::filesystem::path> cloud_ply;
};

TrialResult run_trial(const SceneMesh& mesh, const ExperimentConfig& config, std::uint64_t seed,
                      const TrialOutputs& outputs = {});

/// Header line of the per-view CSV.
const char* views_csv_header();

/// Runs every seed, writing views.csv, trials.csv, summary.csv, summary.txt,
/// trial_<seed>.ply, events_<seed>.jsonl and the plots into out_dir. Trial
/// failures are recorded and the run continues.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}  // namespace see::sim

#endif  // SEE_SIM_EXPERIMENT_HPP_
