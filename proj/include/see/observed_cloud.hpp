#ifndef SEE_OBSERVED_CLOUD_HPP_
#define SEE_OBSERVED_CLOUD_HPP_

#include "see/geometry.hpp"
#include "see/spatial_index.hpp"

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace see {

enum class PointClass : std::uint8_t { Core = 0, Frontier = 1, Outlier = 2 };

const char* to_string(PointClass c);

struct CloudConfig {
    /// Minimum separation between stored points (epsilon).
    double min_separation = 0.0;
    /// Radius at which neighbor counts are maintained (the resolution radius).
    /// Zero disables count maintenance.
    double density_radius = 0.0;
    /// Hash grid cell size; zero picks one from the radii.
    double cell_size = 0.0;
};

/// All accepted sensor measurements with their core/frontier/outlier
/// partition, capturing-view record and a spatial index.
///
/// Points are append-only and addressed by PointId (insertion order). When a
/// density radius is configured the cloud also tracks, per point, the number
/// of stored points in its closed r-ball (itself included) and how many of
/// those are Core, updated on every insert and class change.
class ObservedCloud {
public:
    explicit ObservedCloud(const CloudConfig& config);

    const CloudConfig& config() const { return config_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    const Point& point(PointId id) const { return points_[id]; }
    PointClass point_class(PointId id) const { return class_[id]; }
    /// Position of the view that captured the point.
    const Point& capture_position(PointId id) const { return capture_[id]; }
    const std::vector<Point>& points() const { return points_; }

    std::size_t count(PointClass c) const { return class_counts_[static_cast<std::size_t>(c)]; }
    /// Frontier ids in ascending order.
    const std::set<PointId>& frontiers() const { return frontiers_; }

    /// Ids of stored points q with ||q - center|| <= radius.
    std::vector<PointId> neighbors_within(const Point& center, double radius) const;
    bool any_within(const Point& center, double radius) const { return index_.any_within(center, radius); }
    std::size_t count_within(const Point& center, double radius) const {
        return index_.count_within(center, radius);
    }
    template <class Fn>
    void for_each_within(const Point& center, double radius, Fn&& fn) const {
        index_.for_each_within(center, radius, std::forward<Fn>(fn));
    }

    /// Stores each point iff no stored point (including earlier accepts of
    /// this batch) lies within epsilon. Accepted points start as Outlier and
    /// record the capture position. Returns accepted ids in input order.
    std::vector<PointId> insert_filtered(std::span<const Point> new_points, const View& capture_view);

    /// Appends without the epsilon test.
    PointId append(const Point& p, const Point& capture_position, PointClass c = PointClass::Outlier);

    void set_class(PointId id, PointClass c);

    /// Number of stored points within the density radius of `id`, itself included.
    std::uint32_t neighbor_count(PointId id) const { return neighbor_count_[id]; }
    /// Number of Core points within the density radius of `id`.
    std::uint32_t core_neighbor_count(PointId id) const { return core_neighbor_count_[id]; }
    bool tracks_density() const { return config_.density_radius > 0.0; }

    /// Copy holding only the points inside the closed box; classes and
    /// capture positions are preserved. Ids are reassigned in order.
    ObservedCloud crop_to_bounds(const Bounds& box) const;

private:
    CloudConfig config_;
    std::vector<Point> points_;
    std::vector<PointClass> class_;
    std::vector<Point> capture_;
    std::vector<std::uint32_t> neighbor_count_;
    std::vector<std::uint32_t> core_neighbor_count_;
    std::array<std::size_t, 3> class_counts_{};
    std::set<PointId> frontiers_;
    SpatialHashGrid index_;
};

}  // namespace see

#endif  // SEE_OBSERVED_CLOUD_HPP_
