// see: run SEE observation experiments, evaluate coverage, plot results.

#include "see/cloud_io.hpp"
#include "see/params.hpp"
#include "see/sim/config.hpp"
#include "see/sim/experiment.hpp"
#include "see/sim/mesh.hpp"
#include "see/sim/metrics.hpp"
#include "see/sim/plot.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <vector>

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed_first,
            std::optional<int> seeds, const std::string& timing) {
    see::sim::ExperimentConfig config = see::sim::load_config(config_path);
    if (seed_first) config.seed_first = *seed_first;
    if (seeds) config.seeds = *seeds;
    if (timing == "none") config.timing = see::sim::TimingMode::None;
    if (timing == "wall") config.timing = see::sim::TimingMode::Wall;
    const see::sim::ExperimentResult result = see::sim::run_experiment(config, out_dir);
    std::cout << "trials: " << result.trials.size() << ", failed: " << result.failures() << ", output: " << out_dir
              << '\n';
    return result.failures() == result.trials.size() ? 1 : 0;
}

int cmd_coverage(const std::string& mesh_path, const std::string& ply, double eta, const std::vector<double>& box) {
    see::sim::SceneMesh mesh = see::sim::load_scene(mesh_path);
    if (box.size() == 3) mesh = see::sim::scale_to_box(mesh, see::Vec3(box[0], box[1], box[2]));
    std::vector<see::Point> points;
    for (const see::LabeledPoint& p : see::read_cloud_ply(ply)) points.push_back(p.position);
    const double c = see::sim::coverage(mesh, points, eta);
    std::cout << "vertices " << mesh.vertices.size() << " points " << points.size() << " coverage " << c << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surface Edge Explorer next-best-view planner and simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run seeded observation trials from a config file");
    std::string config_path;
    std::string out_dir = "results";
    std::optional<std::uint64_t> seed_first;
    std::optional<int> seeds;
    std::string timing;
    run->add_option("config", config_path, "experiment config (key = value)")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--out", out_dir, "output directory");
    run->add_option("--seed-first", seed_first, "first seed (overrides config)");
    run->add_option("--seeds", seeds, "number of seeds (overrides config)")->check(CLI::PositiveNumber);
    run->add_option("--timing", timing, "planning time measurement (overrides config)")
        ->check(CLI::IsMember({"wall", "none"}));

    auto* cov = app.add_subcommand("coverage", "coverage of a mesh by a PLY pointcloud");
    std::string mesh_path;
    std::string ply;
    double eta = 0.005;
    std::vector<double> box;
    cov->add_option("mesh", mesh_path, "mesh file or builtin:sphere:<r>")->required();
    cov->add_option("cloud", ply, "ASCII PLY pointcloud")->required()->check(CLI::ExistingFile);
    cov->add_option("--eta", eta, "registration radius, m")->check(CLI::PositiveNumber);
    cov->add_option("--scale-box", box, "scale mesh into this box first (x y z)")->expected(3);

    auto* plot = app.add_subcommand("plot", "plot coverage curves from views.csv");
    std::string csv;
    std::string plot_dir = ".";
    plot->add_option("csv", csv, "per-view CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("-o,--out", plot_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, out_dir, seed_first, seeds, timing);
        if (*cov) return cmd_coverage(mesh_path, ply, eta, box);
        if (*plot) {
            see::sim::plot_views_csv(csv, plot_dir);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "see: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
