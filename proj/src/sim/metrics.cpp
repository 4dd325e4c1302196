#include "see/sim/metrics.hpp"

#include <stdexcept>

namespace see::sim {

double coverage(const SceneMesh& mesh, const ObservedCloud& cloud, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("registration radius must be positive");
    if (mesh.vertices.empty()) return 0.0;
    std::size_t hit = 0;
    for (const Point& v : mesh.vertices) {
        if (cloud.any_within(v, eta)) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(mesh.vertices.size());
}

double coverage(const SceneMesh& mesh, std::span<const Point> points, double eta) {
    CoverageTracker tracker(mesh, eta);
    tracker.add(points);
    return tracker.ratio();
}

CoverageTracker::CoverageTracker(const SceneMesh& mesh, double eta)
    : eta_(eta), vertices_(eta > 0.0 ? 2.0 * eta : 1.0), covered_(mesh.vertices.size(), false) {
    if (!(eta > 0.0)) throw std::invalid_argument("registration radius must be positive");
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        vertices_.insert(static_cast<PointId>(i), mesh.vertices[i]);
    }
}

void CoverageTracker::add(std::span<const Point> points) {
    for (const Point& p : points) {
        vertices_.for_each_within(p, eta_, [&](const SpatialHashGrid::Entry& e) {
            if (!covered_[e.id]) {
                covered_[e.id] = true;
                ++covered_count_;
            }
        });
    }
}

void CoverageTracker::update(const ObservedCloud& cloud) {
    const auto& pts = cloud.points();
    if (seen_ < pts.size()) add(std::span<const Point>(pts.data() + seen_, pts.size() - seen_));
    seen_ = pts.size();
}

double CoverageTracker::ratio() const {
    if (covered_.empty()) return 0.0;
    return static_cast<double>(covered_count_) / static_cast<double>(covered_.size());
}

}  // namespace see::sim
