#ifndef SEE_SIM_METRICS_HPP_
#define SEE_SIM_METRICS_HPP_

#include "see/observed_cloud.hpp"
#include "see/sim/mesh.hpp"
#include "see/spatial_index.hpp"

#include <span>
#include <vector>

namespace see::sim {

/// Fraction of mesh vertices with at least one cloud point within eta.
double coverage(const SceneMesh& mesh, const ObservedCloud& cloud, double eta);
double coverage(const SceneMesh& mesh, std::span<const Point> points, double eta);

/// Coverage maintained incrementally as points are added.
class CoverageTracker {
public:
    CoverageTracker(const SceneMesh& mesh, double eta);

    void add(std::span<const Point> points);
    /// Adds the cloud points with ids >= the count already seen.
    void update(const ObservedCloud& cloud);

    double ratio() const;
    std::size_t covered() const { return covered_count_; }

private:
    double eta_;
    SpatialHashGrid vertices_;
    std::vector<bool> covered_;
    std::size_t covered_count_ = 0;
    std::size_t seen_ = 0;
};

}  // namespace see::sim

#endif  // SEE_SIM_METRICS_HPP_
