#ifndef SEE_SPATIAL_INDEX_HPP_
#define SEE_SPATIAL_INDEX_HPP_

#include "see/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace see {

using PointId = std::uint32_t;

/// Incremental uniform hash grid over 3-space. Supports interleaved inserts
/// and closed-ball radius queries; reads are safe to run concurrently
/// between inserts.
class SpatialHashGrid {
public:
    struct Entry {
        Point position;
        PointId id;
    };

    explicit SpatialHashGrid(double cell_size);

    double cell_size() const { return cell_size_; }
    std::size_t size() const { return size_; }
    std::size_t occupied_cells() const { return cells_.size(); }

    void insert(PointId id, const Point& p);
    void clear();

    /// Calls fn(const Entry&) for every entry with ||p - center|| <= radius.
    /// If fn returns bool, returning false stops the traversal.
    template <class Fn>
    void for_each_within(const Point& center, double radius, Fn&& fn) const;

    bool any_within(const Point& center, double radius) const;
    std::size_t count_within(const Point& center, double radius) const;

private:
    struct CellHash {
        std::size_t operator()(std::uint64_t k) const noexcept {
            k += 0x9e3779b97f4a7c15ULL;
            k = (k ^ (k >> 30)) * 0xbf58476d1ce4e5b9ULL;
            k = (k ^ (k >> 27)) * 0x94d049bb133111ebULL;
            return static_cast<std::size_t>(k ^ (k >> 31));
        }
    };

    static constexpr std::int64_t kBias = std::int64_t{1} << 20;

    std::int64_t cell_coord(double v) const {
        return static_cast<std::int64_t>(std::floor(v * inv_cell_));
    }
    static std::uint64_t pack(std::int64_t x, std::int64_t y, std::int64_t z) {
        return (static_cast<std::uint64_t>(x + kBias) << 42) |
               (static_cast<std::uint64_t>(y + kBias) << 21) |
               static_cast<std::uint64_t>(z + kBias);
    }

    template <class Fn>
    static bool visit_cell(const std::vector<Entry>& cell, const Point& center, double r2, Fn& fn);

    double cell_size_;
    double inv_cell_;
    std::size_t size_ = 0;
    std::unordered_map<std::uint64_t, std::vector<Entry>, CellHash> cells_;
};

template <class Fn>
bool SpatialHashGrid::visit_cell(const std::vector<Entry>& cell, const Point& center, double r2, Fn& fn) {
    for (const Entry& e : cell) {
        if ((e.position - center).squaredNorm() <= r2) {
            if constexpr (std::is_same_v<decltype(fn(e)), bool>) {
                if (!fn(e)) return false;
            } else {
                fn(e);
            }
        }
    }
    return true;
}

template <class Fn>
void SpatialHashGrid::for_each_within(const Point& center, double radius, Fn&& fn) const {
    if (cells_.empty() || !(radius >= 0.0)) return;
    const double r2 = radius * radius;
    const std::int64_t x0 = cell_coord(center.x() - radius), x1 = cell_coord(center.x() + radius);
    const std::int64_t y0 = cell_coord(center.y() - radius), y1 = cell_coord(center.y() + radius);
    const std::int64_t z0 = cell_coord(center.z() - radius), z1 = cell_coord(center.z() + radius);
    const double span = static_cast<double>(x1 - x0 + 1) * static_cast<double>(y1 - y0 + 1) *
                        static_cast<double>(z1 - z0 + 1);

    if (span > static_cast<double>(cells_.size())) {
        // Large ball: walking occupied cells is cheaper than probing empty ones.
        // Cells are visited in a fixed key order so traversal is deterministic.
        std::vector<std::uint64_t> keys;
        keys.reserve(cells_.size());
        for (const auto& [key, cell] : cells_) {
            const auto kx = static_cast<std::int64_t>(key >> 42) - kBias;
            const auto ky = static_cast<std::int64_t>((key >> 21) & 0x1FFFFF) - kBias;
            const auto kz = static_cast<std::int64_t>(key & 0x1FFFFF) - kBias;
            if (kx < x0 || kx > x1 || ky < y0 || ky > y1 || kz < z0 || kz > z1) continue;
            keys.push_back(key);
        }
        std::sort(keys.begin(), keys.end());
        for (std::uint64_t key : keys) {
            if (!visit_cell(cells_.find(key)->second, center, r2, fn)) return;
        }
        return;
    }

    for (std::int64_t x = x0; x <= x1; ++x) {
        for (std::int64_t y = y0; y <= y1; ++y) {
            for (std::int64_t z = z0; z <= z1; ++z) {
                auto it = cells_.find(pack(x, y, z));
                if (it == cells_.end()) continue;
                if (!visit_cell(it->second, center, r2, fn)) return;
            }
        }
    }
}

}  // namespace see

#endif  // SEE_SPATIAL_INDEX_HPP_
