#ifndef SEE_KNN_HPP_
#define SEE_KNN_HPP_

#include "see/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace see {

/// Values of the min(k, |items|) items whose keys are nearest to `query`,
/// ascending by distance. Distance ties keep input order.
template <class Value>
std::vector<Value> k_nearest(std::span<const std::pair<Point, Value>> items, std::size_t k, const Point& query) {
    const std::size_t n = std::min(k, items.size());
    std::vector<std::pair<double, std::size_t>> order(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        order[i] = {(items[i].first - query).squaredNorm(), i};
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end());
    std::vector<Value> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(items[order[i].second].second);
    return out;
}

template <class Value>
std::vector<Value> k_nearest(const std::vector<std::pair<Point, Value>>& items, std::size_t k, const Point& query) {
    return k_nearest(std::span<const std::pair<Point, Value>>(items), k, query);
}

}  // namespace see

#endif  // SEE_KNN_HPP_
