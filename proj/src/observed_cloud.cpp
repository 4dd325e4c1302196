#include "see/observed_cloud.hpp"

#include <stdexcept>

namespace see {

namespace {

double pick_cell_size(const CloudConfig& c) {
    if (c.cell_size > 0.0) return c.cell_size;
    if (c.density_radius > 0.0) return c.density_radius / 2.0;
    if (c.min_separation > 0.0) return 4.0 * c.min_separation;
    return 0.05;
}

}  // namespace

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Core: return "core";
        case PointClass::Frontier: return "frontier";
        case PointClass::Outlier: return "outlier";
    }
    return "?";
}

ObservedCloud::ObservedCloud(const CloudConfig& config) : config_(config), index_(pick_cell_size(config)) {
    if (config_.min_separation < 0.0 || config_.density_radius < 0.0) {
        throw std::invalid_argument("cloud radii must be non-negative");
    }
}

std::vector<PointId> ObservedCloud::neighbors_within(const Point& center, double radius) const {
    std::vector<PointId> out;
    index_.for_each_within(center, radius, [&](const SpatialHashGrid::Entry& e) { out.push_back(e.id); });
    return out;
}

PointId ObservedCloud::append(const Point& p, const Point& capture_position, PointClass c) {
    if (!is_finite(p)) throw GeometryError("point coordinates must be finite");
    const auto id = static_cast<PointId>(points_.size());
    points_.push_back(p);
    class_.push_back(c);
    capture_.push_back(capture_position);
    ++class_counts_[static_cast<std::size_t>(c)];
    if (c == PointClass::Frontier) frontiers_.insert(id);

    if (tracks_density()) {
        std::uint32_t count = 1;
        std::uint32_t core = 0;
        index_.for_each_within(p, config_.density_radius, [&](const SpatialHashGrid::Entry& e) {
            ++neighbor_count_[e.id];
            ++count;
            if (class_[e.id] == PointClass::Core) ++core;
            if (c == PointClass::Core) ++core_neighbor_count_[e.id];
        });
        neighbor_count_.push_back(count);
        core_neighbor_count_.push_back(core + (c == PointClass::Core ? 1 : 0));
    }
    index_.insert(id, p);
    return id;
}

std::vector<PointId> ObservedCloud::insert_filtered(std::span<const Point> new_points, const View& capture_view) {
    std::vector<PointId> accepted;
    for (const Point& p : new_points) {
        if (config_.min_separation > 0.0 && index_.any_within(p, config_.min_separation)) continue;
        accepted.push_back(append(p, capture_view.position));
    }
    return accepted;
}

void ObservedCloud::set_class(PointId id, PointClass c) {
    const PointClass old = class_[id];
    if (old == c) return;
    --class_counts_[static_cast<std::size_t>(old)];
    ++class_counts_[static_cast<std::size_t>(c)];
    class_[id] = c;
    if (old == PointClass::Frontier) frontiers_.erase(id);
    if (c == PointClass::Frontier) frontiers_.insert(id);

    if (tracks_density() && (old == PointClass::Core || c == PointClass::Core)) {
        const int delta = c == PointClass::Core ? 1 : -1;
        index_.for_each_within(points_[id], config_.density_radius, [&](const SpatialHashGrid::Entry& e) {
            core_neighbor_count_[e.id] = static_cast<std::uint32_t>(
                static_cast<int>(core_neighbor_count_[e.id]) + delta);
        });
    }
}

ObservedCloud ObservedCloud::crop_to_bounds(const Bounds& box) const {
    ObservedCloud out(config_);
    std::vector<std::pair<PointId, PointClass>> core_later;
    for (PointId id = 0; id < points_.size(); ++id) {
        if (!box.contains(points_[id])) continue;
        // Insert as non-core first, then promote, so core-neighbor counts
        // are rebuilt through the same path as live updates.
        const PointClass c = class_[id];
        const PointId nid = out.append(points_[id], capture_[id], c == PointClass::Core ? PointClass::Outlier : c);
        if (c == PointClass::Core) core_later.emplace_back(nid, c);
    }
    for (const auto& [nid, c] : core_later) out.set_class(nid, c);
    return out;
}

}  // namespace see
