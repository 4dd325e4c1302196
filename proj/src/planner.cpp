#include "see/planner.hpp"

#include "see/knn.hpp"
#include "see/visibility.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>

namespace see {

std::size_t PlannerState::out_degree(PointId f) const {
    const auto it = edges.find(f);
    return it == edges.end() ? 0 : it->second.size();
}

bool PlannerState::has_edge(PointId from, PointId to) const {
    const auto it = edges.find(from);
    return it != edges.end() && it->second.contains(to);
}

void PlannerState::drop(PointId f) {
    proposals.erase(f);
    frames.erase(f);
    edges.erase(f);
    adjust.erase(f);
    offset_cache_.erase(f);
    for (auto& [parent, children] : edges) children.erase(f);
    if (target == f) target.reset();
}

void PlannerState::drop_stale(const ObservedCloud& cloud) {
    std::vector<PointId> stale;
    for (const auto& [f, view] : proposals) {
        if (cloud.point_class(f) != PointClass::Frontier) stale.push_back(f);
    }
    for (const auto& [f, st] : adjust) {
        if (cloud.point_class(f) != PointClass::Frontier && !proposals.contains(f)) stale.push_back(f);
    }
    for (PointId f : stale) drop(f);
    if (target && cloud.point_class(*target) != PointClass::Frontier) target.reset();
}

double PlannerState::offset(const ObservedCloud& cloud, PointId f, const ObservationParams& params) const {
    if (offset_cache_size_ != cloud.size()) {
        offset_cache_.clear();
        offset_cache_size_ = cloud.size();
    }
    const auto it = offset_cache_.find(f);
    if (it != offset_cache_.end()) return it->second;
    const double z = visibility_offset(cloud, cloud.point(f), frames.at(f), params);
    offset_cache_.emplace(f, z);
    return z;
}

std::vector<PointId> PlannerState::nearest_proposals(const Point& position, int k) const {
    std::vector<std::pair<Point, PointId>> items;
    items.reserve(proposals.size());
    for (const auto& [f, view] : proposals) items.emplace_back(view.position, f);
    return k_nearest(items, static_cast<std::size_t>(std::max(k, 0)), position);
}

View propose_view(const Point& frontier, const SurfaceFrame& frame, double view_distance) {
    return View{frontier + view_distance * frame.normal.vec(), -frame.normal};
}

ClassificationDelta refine_views(PlannerState& state, ObservedCloud& cloud, const View& current_view,
                                 const ObservationParams& params) {
    ClassificationDelta delta;
    for (PointId f : state.nearest_proposals(current_view.position, params.view_updates)) {
        const Point& fp = cloud.point(f);
        const double zeta = state.offset(cloud, f, params);
        if (!is_occluded(cloud, state.proposals.at(f).position, fp, zeta, params)) continue;
        const View optimized = optimise_view_with_offset(cloud, fp, cloud.capture_position(f), zeta, params);
        if (is_occluded(cloud, optimized.position, fp, zeta, params)) {
            delta.merge(demote_frontier(cloud, f));
            state.drop(f);
        } else {
            state.proposals.insert_or_assign(f, optimized);
        }
    }
    return delta;
}

bool graph_edge_allowed(PointId, PointId) { return true; }

void update_graph(PlannerState& state, const ObservedCloud& cloud, const View& current_view,
                  const ObservationParams& params) {
    for (auto it = state.edges.begin(); it != state.edges.end();) {
        if (!state.proposals.contains(it->first) || cloud.point_class(it->first) != PointClass::Frontier) {
            it = state.edges.erase(it);
            continue;
        }
        std::erase_if(it->second, [&](PointId c) {
            return !state.proposals.contains(c) || cloud.point_class(c) != PointClass::Frontier;
        });
        ++it;
    }
    for (PointId fi : state.nearest_proposals(current_view.position, params.view_updates)) {
        const Point vi = state.proposals.at(fi).position;
        std::set<PointId> children;
        for (PointId fj : state.nearest_proposals(vi, params.view_updates)) {
            if (!graph_edge_allowed(fi, fj)) continue;
            if (!is_occluded(cloud, vi, cloud.point(fj), state.offset(cloud, fj, params), params)) {
                children.insert(fj);
            }
        }
        state.edges.insert_or_assign(fi, std::move(children));
    }
}

std::optional<Selection> select_nbv(PlannerState& state, const View& current_view) {
    if (state.proposals.empty()) return std::nullopt;
    const Point& pc = current_view.position;

    PointId nearest = state.proposals.begin()->first;
    double nearest_dist = std::numeric_limits<double>::infinity();
    for (const auto& [f, view] : state.proposals) {
        const double dist = (view.position - pc).norm();
        if (dist < nearest_dist) {
            nearest_dist = dist;
            nearest = f;
        }
    }

    const std::size_t base_degree = state.out_degree(nearest);
    std::optional<PointId> best;
    double best_ratio = -1.0;
    double best_dist = 0.0;
    for (const auto& [f, view] : state.proposals) {
        const std::size_t deg = state.out_degree(f);
        if (deg <= base_degree || !state.has_edge(f, nearest)) continue;
        const double dist = (view.position - pc).norm();
        const double ratio = dist > 0.0 ? static_cast<double>(deg) / dist : std::numeric_limits<double>::infinity();
        if (!best || ratio > best_ratio || (ratio == best_ratio && dist < best_dist)) {
            best = f;
            best_ratio = ratio;
            best_dist = dist;
        }
    }
    const PointId chosen = best.value_or(nearest);
    state.target = chosen;
    return Selection{chosen, state.proposals.at(chosen)};
}

const char* to_string(AdjustOutcome o) {
    switch (o) {
        case AdjustOutcome::Adjusted: return "adjusted";
        case AdjustOutcome::Switched: return "switched";
        case AdjustOutcome::Demoted: return "demoted";
    }
    return "?";
}

Vec3 separation_vector(const SurfaceFrame& frame, const Point& frontier, const Point& mean) {
    return frame.basis().transpose() * (frontier - mean);
}

double adjustment_angle(double view_distance, double scale, double s) {
    const double d = view_distance;
    return std::atan(d * scale * s / (d * d + (scale + 1.0) * s * s));
}

AdjustResult adjust_view(PlannerState& state, ObservedCloud& cloud, const View& current_view,
                         std::span<const Point> accepted, const ObservationParams& params, int max_adjustments) {
    if (!state.target) throw std::logic_error("adjust_view needs a current target");
    const PointId fc = *state.target;
    const Point& f = cloud.point(fc);
    const SurfaceFrame& frame = state.frames.at(fc);
    const double d = params.view_distance;
    AdjustState& st = state.adjust[fc];

    AdjustResult result{AdjustOutcome::Demoted, std::nullopt, {}};
    auto demote = [&] {
        result.outcome = AdjustOutcome::Demoted;
        result.delta = demote_frontier(cloud, fc);
        state.drop(fc);
        return result;
    };
    if (++st.adjustments > max_adjustments) return demote();

    double separation = std::numeric_limits<double>::infinity();
    Vec3 s = Vec3::Zero();
    if (!accepted.empty()) {
        Vec3 mean = Vec3::Zero();
        for (const Point& p : accepted) mean += p;
        mean /= static_cast<double>(accepted.size());
        s = separation_vector(frame, f, mean);
        separation = s.norm();
    }

    Vec3 omega;
    if (separation < st.separation) {
        const double a = st.scale;
        const Vec3 t_f = (a + 1.0) * s[1] * frame.frontier.vec();
        const Vec3 t_b = (a + 1.0) * s[2] * frame.boundary.vec();
        const Mat3 r_b = rodrigues(frame.boundary, adjustment_angle(d, a, s[1]));
        const Mat3 r_f = rodrigues(frame.frontier, adjustment_angle(d, a, s[2]));
        const Point moved = f + r_f * (t_b + r_b * (t_f + (current_view.position - f)));
        omega = f - moved;
        st.separation = separation;
        st.scale = 2.0 * a;
        result.outcome = AdjustOutcome::Adjusted;
    } else if (!st.switched) {
        omega = f - cloud.capture_position(fc);
        st.separation = std::numeric_limits<double>::infinity();
        st.scale = 1.0;
        st.switched = true;
        result.outcome = AdjustOutcome::Switched;
    } else {
        return demote();
    }
    if (!(omega.norm() > 0.0) || !is_finite(omega)) omega = current_view.orientation.vec();
    const UnitVector o(omega);
    const View adjusted{f - d * o.vec(), o};
    state.proposals.insert_or_assign(fc, adjusted);
    result.view = adjusted;
    return result;
}

namespace {

class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        if (!enabled_) return 0.0;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

ObservationResult run(MeasurementSource& source, const View& initial_view, const ObservationParams& params,
                      const RunOptions& options, const ViewCallback& on_view) {
    if (options.max_views < 1) throw std::invalid_argument("max_views must be at least 1");
    params.validate();

    ObservationResult result{ObservedCloud(CloudConfig{params.min_separation, params.resolution_radius, 0.0}), {},
                             false, 0};
    ObservedCloud& cloud = result.cloud;
    PlannerState state;
    View view = initial_view;
    double travel = 0.0;

    for (int index = 0;; ++index) {
        const std::vector<Point> captured = source.capture(view);
        const Stopwatch clock(options.measure_time);

        ViewRecord record;
        record.index = index;
        record.view = view;
        record.target = state.target;
        record.captured = captured.size();
        record.travel_m = travel;

        const ClassificationDelta delta = classify_update(cloud, captured, view, params);
        record.accepted = delta.accepted.size();
        std::size_t demoted = 0;

        const bool target_pending = state.target && cloud.point_class(*state.target) == PointClass::Frontier &&
                                    state.frames.contains(*state.target);
        state.drop_stale(cloud);
        if (target_pending) {
            std::vector<Point> accepted;
            accepted.reserve(delta.accepted.size());
            for (PointId id : delta.accepted) accepted.push_back(cloud.point(id));
            const AdjustResult adj =
                adjust_view(state, cloud, view, accepted, params, options.max_adjustments_per_frontier);
            record.outcome = to_string(adj.outcome);
            demoted += adj.delta.newly_outlier.size();
        } else if (record.target) {
            record.outcome = "observed";
        }

        const ProjectedMeasurements projected(view.position, captured, params.visibility_distance);
        std::vector<PointId> unplanned;
        for (PointId f : cloud.frontiers()) {
            if (!state.proposals.contains(f)) unplanned.push_back(f);
        }
        for (PointId f : unplanned) {
            try {
                const SurfaceFrame frame = estimate_surface(cloud, cloud.point(f), view, projected, params);
                state.frames.insert_or_assign(f, frame);
                state.proposals.insert_or_assign(f, propose_view(cloud.point(f), frame, params.view_distance));
            } catch (const DegenerateGeometryError&) {
                if (options.demote_degenerate) {
                    demote_frontier(cloud, f);
                    ++demoted;
                }
                state.drop(f);
            }
        }

        demoted += refine_views(state, cloud, view, params).newly_outlier.size();
        update_graph(state, cloud, view, params);
        const std::optional<Selection> next = select_nbv(state, view);

        record.nbv_time_s = clock.seconds();
        record.points_total = cloud.size();
        record.frontiers = cloud.count(PointClass::Frontier);
        record.demoted = demoted;
        result.views.push_back(record);
        if (on_view) on_view(cloud, record);

        if (!next) {
            result.complete = cloud.count(PointClass::Frontier) == 0;
            break;
        }
        if (index + 1 >= options.max_views) break;
        travel += (next->view.position - view.position).norm();
        view = next->view;
    }
    result.remaining_frontiers = cloud.count(PointClass::Frontier);
    return result;
}

void write_event(std::ostream& out, const ViewRecord& r) {
    const auto old_precision = out.precision(17);
    out << "{\"view_index\":" << r.index << ",\"position\":[" << r.view.position.x() << ','
        << r.view.position.y() << ',' << r.view.position.z() << "],\"orientation\":[" << r.view.orientation.x()
        << ',' << r.view.orientation.y() << ',' << r.view.orientation.z() << "],\"target\":";
    if (r.target) {
        out << *r.target;
    } else {
        out << "null";
    }
    out << ",\"outcome\":\"" << (r.outcome.empty() ? "none" : r.outcome) << "\",\"captured\":" << r.captured
        << ",\"accepted\":" << r.accepted << ",\"points_total\":" << r.points_total
        << ",\"frontiers\":" << r.frontiers << ",\"demoted\":" << r.demoted << ",\"travel_m\":" << r.travel_m
        << ",\"nbv_time_s\":" << r.nbv_time_s << "}\n";
    out.precision(old_precision);
}

}  // namespace see
