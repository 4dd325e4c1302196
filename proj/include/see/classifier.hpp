#ifndef SEE_CLASSIFIER_HPP_
#define SEE_CLASSIFIER_HPP_

#include "see/observed_cloud.hpp"
#include "see/params.hpp"

#include <set>
#include <span>
#include <vector>

namespace see {

/// Class changes produced by one update. Sets are disjoint and
/// removed_frontiers is a subset of newly_core and newly_outlier.
struct ClassificationDelta {
    std::set<PointId> newly_core;
    std::set<PointId> newly_frontier;
    std::set<PointId> newly_outlier;
    std::set<PointId> removed_frontiers;
    /// Points accepted by the epsilon filter, in capture order.
    std::vector<PointId> accepted;

    bool empty() const {
        return newly_core.empty() && newly_frontier.empty() && newly_outlier.empty() && removed_frontiers.empty();
    }
    void merge(const ClassificationDelta& later);
};

/// Adds new measurements to the cloud and reclassifies every point whose
/// neighborhood changed. The cloud must track density at params.resolution_radius.
ClassificationDelta classify_update(ObservedCloud& cloud, std::span<const Point> new_points, const View& current_view,
                                    const ObservationParams& params);

/// Moves a frontier the planner found unobservable to Outlier.
ClassificationDelta demote_frontier(ObservedCloud& cloud, PointId id);

}  // namespace see

#endif  // SEE_CLASSIFIER_HPP_
