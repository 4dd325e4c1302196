#include "see/sim/experiment.hpp"

#include "see/cloud_io.hpp"
#include "see/sim/metrics.hpp"
#include "see/sim/plot.hpp"
#include "see/sim/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace see::sim {

namespace {

struct Stats {
    double mean = 0.0;
    double stdev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Stats stats(const std::vector<double>& v) {
    Stats s;
    if (v.empty()) return s;
    s.min = *std::min_element(v.begin(), v.end());
    s.max = *std::max_element(v.begin(), v.end());
    for (double x : v) s.mean += x;
    s.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        for (double x : v) s.stdev += (x - s.mean) * (x - s.mean);
        s.stdev = std::sqrt(s.stdev / static_cast<double>(v.size() - 1));
    }
    return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << std::setprecision(10);
    return out;
}

}  // namespace

std::size_t ExperimentResult::failures() const {
    return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const TrialResult& t) { return !t.ok; }));
}

SceneMesh load_experiment_mesh(const ExperimentConfig& config) {
    SceneMesh mesh = load_scene(config.mesh);
    if (config.scale_box) mesh = scale_to_box(mesh, *config.scale_box);
    return mesh;
}

View initial_view(const SceneMesh& mesh, const ExperimentConfig& config, const ObservationParams& params,
                  std::uint64_t seed) {
    const Bounds b = mesh.bounds();
    const Point target = config.initial_target.value_or(b.center());
    if (config.initial_position) return View::looking_at(*config.initial_position, target);
    double radius = 0.0;
    for (const Point& v : mesh.vertices) radius = std::max(radius, (v - b.center()).norm());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec3 dir;
    do {
        dir = Vec3(gauss(rng), gauss(rng), gauss(rng));
    } while (dir.norm() < 1e-6);
    dir.normalize();
    return View::looking_at(target + (radius + params.view_distance) * dir, target);
}

const char* views_csv_header() {
    return "trial,view_index,x,y,z,coverage,cum_distance_m,nbv_time_s,points_total,frontiers";
}

TrialResult run_trial(const SceneMesh& mesh, const ExperimentConfig& config, std::uint64_t seed,
                      const TrialOutputs& outputs) {
    TrialResult result;
    result.seed = seed;
    const ObservationParams params = config.params();
    SimSensor sensor(mesh, config.sensor, seed);
    CoverageTracker tracker(mesh, params.registration_radius);

    RunOptions options;
    options.max_views = config.max_views;
    options.max_adjustments_per_frontier = config.max_adjustments_per_frontier;
    options.measure_time = config.timing == TimingMode::Wall;

    const ObservationResult obs =
        run(sensor, initial_view(mesh, config, params, seed), params, options,
            [&](const ObservedCloud& cloud, const ViewRecord& r) {
                tracker.update(cloud);
                const double cov = tracker.ratio();
                result.coverage_curve.push_back(cov);
                result.planning_time_s += r.nbv_time_s;
                if (outputs.views_csv) {
                    *outputs.views_csv << seed << ',' << r.index << ',' << r.view.position.x() << ','
                                       << r.view.position.y() << ',' << r.view.position.z() << ',' << cov << ','
                                       << r.travel_m << ',' << r.nbv_time_s << ',' << r.points_total << ','
                                       << r.frontiers << '\n';
                }
                if (outputs.events) write_event(*outputs.events, r);
            });

    result.ok = true;
    result.views = static_cast<int>(obs.views.size());
    result.coverage = tracker.ratio();
    result.distance_m = obs.views.empty() ? 0.0 : obs.views.back().travel_m;
    result.complete = obs.complete;
    result.remaining_frontiers = obs.remaining_frontiers;
    result.points = obs.cloud.size();
    if (outputs.cloud_ply) write_cloud_ply(*outputs.cloud_ply, obs.cloud);
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    config.params();  // fail on bad parameters before writing anything
    const SceneMesh mesh = load_experiment_mesh(config);
    std::filesystem::create_directories(out_dir);

    std::ofstream views = open_out(out_dir / "views.csv");
    views << views_csv_header() << '\n';

    ExperimentResult result;
    for (int i = 0; i < config.seeds; ++i) {
        const std::uint64_t seed = config.seed_first + static_cast<std::uint64_t>(i);
        std::ofstream events = open_out(out_dir / ("events_" + std::to_string(seed) + ".jsonl"));
        // Rows are buffered so a crashed trial leaves no partial rows behind.
        std::ostringstream rows;
        rows << std::setprecision(10);
        TrialOutputs outputs{&rows, &events, out_dir / ("trial_" + std::to_string(seed) + ".ply")};
        try {
            result.trials.push_back(run_trial(mesh, config, seed, outputs));
            views << rows.str();
            views.flush();
            const TrialResult& t = result.trials.back();
            std::clog << "see: trial " << seed << ": " << t.views << " views, coverage " << 100.0 * t.coverage
                      << "%, distance " << t.distance_m << " m" << (t.complete ? "" : " (incomplete)") << '\n';
        } catch (const std::exception& e) {
            TrialResult failed;
            failed.seed = seed;
            failed.error = e.what();
            result.trials.push_back(failed);
            std::clog << "see: trial " << seed << " failed: " << e.what() << '\n';
        }
    }

    std::ofstream trials = open_out(out_dir / "trials.csv");
    trials << "trial,ok,views,coverage,distance_m,planning_time_s,complete,remaining_frontiers,points,error\n";
    std::vector<double> v_views;
    std::vector<double> v_cov;
    std::vector<double> v_dist;
    std::vector<double> v_time;
    for (const TrialResult& t : result.trials) {
        std::string err = t.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        trials << t.seed << ',' << (t.ok ? 1 : 0) << ',' << t.views << ',' << t.coverage << ',' << t.distance_m << ','
               << t.planning_time_s << ',' << (t.complete ? 1 : 0) << ',' << t.remaining_frontiers << ',' << t.points
               << ',' << err << '\n';
        if (!t.ok) continue;
        v_views.push_back(t.views);
        v_cov.push_back(t.coverage);
        v_dist.push_back(t.distance_m);
        v_time.push_back(t.planning_time_s);
    }

    const std::vector<std::pair<std::string, Stats>> rows{{"views", stats(v_views)},
                                                          {"coverage", stats(v_cov)},
                                                          {"distance_m", stats(v_dist)},
                                                          {"planning_time_s", stats(v_time)}};
    std::ofstream summary = open_out(out_dir / "summary.csv");
    summary << "metric,mean,std,min,max,trials_ok,trials_total\n";
    for (const auto& [name, s] : rows) {
        summary << name << ',' << s.mean << ',' << s.stdev << ',' << s.min << ',' << s.max << ',' << v_views.size()
                << ',' << result.trials.size() << '\n';
    }

    std::ofstream text = open_out(out_dir / "summary.txt");
    text << "# parameters\n";
    write_config_echo(text, config);
    text << "\n# results (" << v_views.size() << " of " << result.trials.size() << " trials succeeded)\n";
    for (const auto& [name, s] : rows) {
        text << std::left << std::setw(16) << name << " mean " << s.mean << "  std " << s.stdev << "  min " << s.min
             << "  max " << s.max << '\n';
    }
    for (const TrialResult& t : result.trials) {
        if (!t.ok) text << "trial " << t.seed << " failed: " << t.error << '\n';
    }
    views.close();

    if (config.write_plots) plot_views_csv(out_dir / "views.csv", out_dir);
    return result;
}

}  // namespace see::sim
