#ifndef SEE_SIM_PLOT_HPP_
#define SEE_SIM_PLOT_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace see::sim {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Static SVG line chart with linear axes.
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<Series>& series);

/// Reads a per-view CSV and writes coverage_vs_distance.svg and
/// coverage_vs_time.svg (cumulative planning time) into `out_dir`.
void plot_views_csv(const std::filesystem::path& csv, const std::filesystem::path& out_dir);

}  // namespace see::sim

#endif  // SEE_SIM_PLOT_HPP_
