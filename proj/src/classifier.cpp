#include "see/classifier.hpp"

#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace see {

namespace {

void record_change(ClassificationDelta& delta, PointId id, std::optional<PointClass> before, PointClass after) {
    if (before && *before == after) return;
    switch (after) {
        case PointClass::Core: delta.newly_core.insert(id); break;
        case PointClass::Frontier: delta.newly_frontier.insert(id); break;
        case PointClass::Outlier: delta.newly_outlier.insert(id); break;
    }
    if (before && *before == PointClass::Frontier) delta.removed_frontiers.insert(id);
}

}  // namespace

void ClassificationDelta::merge(const ClassificationDelta& later) {
    auto move_to = [](std::set<PointId>& target, PointId id, std::set<PointId>& a, std::set<PointId>& b) {
        a.erase(id);
        b.erase(id);
        target.insert(id);
    };
    for (PointId id : later.newly_core) move_to(newly_core, id, newly_frontier, newly_outlier);
    for (PointId id : later.newly_frontier) move_to(newly_frontier, id, newly_core, newly_outlier);
    for (PointId id : later.newly_outlier) move_to(newly_outlier, id, newly_core, newly_frontier);
    for (PointId id : later.removed_frontiers) removed_frontiers.insert(id);
    for (PointId id : newly_frontier) removed_frontiers.erase(id);
    accepted.insert(accepted.end(), later.accepted.begin(), later.accepted.end());
}

ClassificationDelta classify_update(ObservedCloud& cloud, std::span<const Point> new_points, const View& current_view,
                                    const ObservationParams& params) {
    if (cloud.config().density_radius != params.resolution_radius) {
        throw std::invalid_argument("cloud density radius does not match the resolution radius");
    }
    const double eps = params.min_separation;
    const double r = params.resolution_radius;
    const auto k_min = static_cast<std::uint32_t>(params.k_min);

    // Class of each touched point before this update; nullopt for new points.
    std::map<PointId, std::optional<PointClass>> before;
    std::unordered_set<PointId> visited;
    ClassificationDelta delta;

    auto touch = [&](PointId id) {
        if (!before.contains(id)) before.emplace(id, cloud.point_class(id));
    };

    for (const Point& p : new_points) {
        if (cloud.any_within(p, eps)) continue;
        const PointId pid = cloud.append(p, current_view.position);
        before.emplace(pid, std::nullopt);
        delta.accepted.push_back(pid);

        // p first so that a promotion of p sees its whole neighborhood queued behind it.
        std::deque<PointId> queue;
        queue.push_back(pid);
        cloud.for_each_within(p, r, [&](const SpatialHashGrid::Entry& e) {
            if (e.id != pid) queue.push_back(e.id);
        });

        while (!queue.empty()) {
            const PointId q = queue.front();
            queue.pop_front();
            if (cloud.point_class(q) == PointClass::Core) continue;
            touch(q);
            if (cloud.neighbor_count(q) < k_min) {
                cloud.set_class(q, cloud.core_neighbor_count(q) > 0 ? PointClass::Frontier : PointClass::Outlier);
                continue;
            }
            cloud.set_class(q, PointClass::Core);
            if (q != pid && !visited.contains(q)) {
                // Neighbors gained a core neighbor; reprocess them even if already seen.
                cloud.for_each_within(cloud.point(q), r, [&](const SpatialHashGrid::Entry& e) {
                    queue.push_back(e.id);
                });
                visited.insert(q);
            }
        }
    }

    for (const auto& [id, cls] : before) record_change(delta, id, cls, cloud.point_class(id));
    return delta;
}

ClassificationDelta demote_frontier(ObservedCloud& cloud, PointId id) {
    ClassificationDelta delta;
    if (cloud.point_class(id) != PointClass::Frontier) return delta;
    cloud.set_class(id, PointClass::Outlier);
    record_change(delta, id, PointClass::Frontier, PointClass::Outlier);
    return delta;
}

}  // namespace see
