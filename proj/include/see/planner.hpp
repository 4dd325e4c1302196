#ifndef SEE_PLANNER_HPP_
#define SEE_PLANNER_HPP_

#include "see/classifier.hpp"
#include "see/geometry.hpp"
#include "see/observed_cloud.hpp"
#include "see/params.hpp"
#include "see/surface.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace see {

/// Per-frontier bookkeeping for reactive view adjustment.
struct AdjustState {
    double separation = std::numeric_limits<double>::infinity();  ///< D
    double scale = 1.0;                                           ///< A
    bool switched = false;
    int adjustments = 0;
};

/// Proposals, frames and the frontier visibility graph, keyed by frontier id.
/// Vertices are the frontiers holding a proposal; "insertion order" for tie
/// breaks is ascending frontier id.
class PlannerState {
public:
    std::map<PointId, View> proposals;
    std::map<PointId, SurfaceFrame> frames;
    /// Out-edges: parent frontier -> child frontiers visible from the parent view.
    std::map<PointId, std::set<PointId>> edges;
    std::map<PointId, AdjustState> adjust;
    std::optional<PointId> target;

    std::size_t out_degree(PointId f) const;
    bool has_edge(PointId from, PointId to) const;

    /// Removes every trace of a frontier (proposal, frame, vertex, edges, adjustment state).
    void drop(PointId f);
    /// Drops all frontiers that are no longer classified Frontier.
    void drop_stale(const ObservedCloud& cloud);

    /// Visibility offset of a frontier, cached while the cloud does not grow.
    double offset(const ObservedCloud& cloud, PointId f, const ObservationParams& params) const;

    /// Frontiers whose proposals are the k nearest to `position`, nearest first.
    std::vector<PointId> nearest_proposals(const Point& position, int k) const;

private:
    mutable std::unordered_map<PointId, double> offset_cache_;
    mutable std::size_t offset_cache_size_ = 0;
};

/// (f + d n, -n).
View propose_view(const Point& frontier, const SurfaceFrame& frame, double view_distance);

/// Replaces occluded proposals among the tau nearest with optimized views and
/// demotes frontiers whose optimized view is still occluded.
ClassificationDelta refine_views(PlannerState& state, ObservedCloud& cloud, const View& current_view,
                                 const ObservationParams& params);

/// Whether frontier `child` counts as visible from `parent`'s proposal. Self
/// edges are allowed.
bool graph_edge_allowed(PointId parent, PointId child);

void update_graph(PlannerState& state, const ObservedCloud& cloud, const View& current_view,
                  const ObservationParams& params);

struct Selection {
    PointId frontier;
    View view;
};

/// Next best view, or nullopt when the graph is empty. Sets state.target.
std::optional<Selection> select_nbv(PlannerState& state, const View& current_view);

enum class AdjustOutcome { Adjusted, Switched, Demoted };
const char* to_string(AdjustOutcome o);

struct AdjustResult {
    AdjustOutcome outcome;
    std::optional<View> view;
    ClassificationDelta delta;
};

/// Components of C^T (f - mean) in the frame basis (n, f, b).
Vec3 separation_vector(const SurfaceFrame& frame, const Point& frontier, const Point& mean);

/// Rotation angle about b for a separation component s1 (and about f for s2).
double adjustment_angle(double view_distance, double scale, double s);

/// New view for the current target after a failed capture. `accepted` are
/// the epsilon-accepted points of that capture; an empty set counts as a
/// non-decreasing separation. Rotations act about the frontier.
AdjustResult adjust_view(PlannerState& state, ObservedCloud& cloud, const View& current_view,
                         std::span<const Point> accepted, const ObservationParams& params,
                         int max_adjustments = 10);

/// Scene access for the planner loop.
class MeasurementSource {
public:
    virtual ~MeasurementSource() = default;
    virtual std::vector<Point> capture(const View& view) = 0;
};

struct RunOptions {
    int max_views = 600;
    int max_adjustments_per_frontier = 10;
    /// When false, planning times are reported as zero.
    bool measure_time = true;
    /// Frontiers without a stable surface estimate are demoted.
    bool demote_degenerate = true;
};

struct ViewRecord {
    int index = 0;
    View view{Point::Zero(), UnitVector(0.0, 0.0, 1.0)};
    std::optional<PointId> target;
    std::string outcome;  ///< adjustment outcome for the previous target, or empty
    std::size_t captured = 0;
    std::size_t accepted = 0;
    std::size_t points_total = 0;
    std::size_t frontiers = 0;
    std::size_t demoted = 0;
    double travel_m = 0.0;  ///< cumulative straight-line travel up to this view
    double nbv_time_s = 0.0;
};

struct ObservationResult {
    ObservedCloud cloud;
    std::vector<ViewRecord> views;
    bool complete = false;
    std::size_t remaining_frontiers = 0;
};

using ViewCallback = std::function<void(const ObservedCloud&, const ViewRecord&)>;

/// Capture, classify, adjust, propose, refine, graph and select until no
/// frontiers remain or max_views captures were made.
ObservationResult run(MeasurementSource& source, const View& initial_view, const ObservationParams& params,
                      const RunOptions& options = {}, const ViewCallback& on_view = {});

/// One line-delimited JSON record.
void write_event(std::ostream& out, const ViewRecord& record);

}  // namespace see

#endif  // SEE_PLANNER_HPP_
