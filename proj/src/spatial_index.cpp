#include "see/spatial_index.hpp"

namespace see {

SpatialHashGrid::SpatialHashGrid(double cell_size) : cell_size_(cell_size), inv_cell_(1.0 / cell_size) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
        throw std::invalid_argument("spatial grid cell size must be positive and finite");
    }
}

void SpatialHashGrid::insert(PointId id, const Point& p) {
    cells_[pack(cell_coord(p.x()), cell_coord(p.y()), cell_coord(p.z()))].push_back(Entry{p, id});
    ++size_;
}

void SpatialHashGrid::clear() {
    cells_.clear();
    size_ = 0;
}

bool SpatialHashGrid::any_within(const Point& center, double radius) const {
    bool found = false;
    for_each_within(center, radius, [&](const Entry&) {
        found = true;
        return false;
    });
    return found;
}

std::size_t SpatialHashGrid::count_within(const Point& center, double radius) const {
    std::size_t n = 0;
    for_each_within(center, radius, [&](const Entry&) { ++n; });
    return n;
}

}  // namespace see
