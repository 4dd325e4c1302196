#include "see/sim/bvh.hpp"

#include <algorithm>
#include <limits>

namespace see::sim {

namespace {

constexpr std::uint32_t kLeafSize = 4;

bool slab_hit(const Vec3& lo, const Vec3& hi, const Point& o, const Vec3& inv, double t_max) {
    double t0 = 0.0;
    double t1 = t_max;
    for (int a = 0; a < 3; ++a) {
        double near = (lo[a] - o[a]) * inv[a];
        double far = (hi[a] - o[a]) * inv[a];
        if (near > far) std::swap(near, far);
        // NaN from 0 * inf compares false and leaves the interval unchanged.
        if (near > t0) t0 = near;
        if (far < t1) t1 = far;
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

Bvh::Bvh(const SceneMesh& mesh) {
    mesh.validate();
    const auto n = static_cast<std::uint32_t>(mesh.triangles.size());
    tris_.reserve(n);
    centroids_.reserve(n);
    for (const Triangle& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        tris_.push_back({a, b - a, c - a});
        centroids_.push_back((a + b + c) / 3.0);
    }
    order_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) order_[i] = i;
    nodes_.reserve(2 * n / kLeafSize + 1);
    build(0, n);
}

std::uint32_t Bvh::build(std::uint32_t begin, std::uint32_t end) {
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    Vec3 clo = lo;
    Vec3 chi = hi;
    for (std::uint32_t i = begin; i < end; ++i) {
        const Tri& t = tris_[order_[i]];
        for (const Vec3& v : {t.a, Vec3(t.a + t.e1), Vec3(t.a + t.e2)}) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
        clo = clo.cwiseMin(centroids_[order_[i]]);
        chi = chi.cwiseMax(centroids_[order_[i]]);
    }
    nodes_[index].lo = lo;
    nodes_[index].hi = hi;
    if (end - begin <= kLeafSize) {
        nodes_[index].first = begin;
        nodes_[index].count = end - begin;
        return index;
    }
    int axis = 0;
    (chi - clo).maxCoeff(&axis);
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         if (centroids_[a][axis] != centroids_[b][axis]) return centroids_[a][axis] < centroids_[b][axis];
                         return a < b;
                     });
    build(begin, mid);  // left child is index + 1
    const std::uint32_t right = build(mid, end);
    nodes_[index].first = right;
    nodes_[index].count = 0;
    return index;
}

std::optional<RayHit> Bvh::intersect(const Point& origin, const Vec3& direction) const {
    const Vec3 inv = direction.cwiseInverse();
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_tri = 0;
    std::uint32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!slab_hit(node.lo, node.hi, origin, inv, best)) continue;
        if (node.count == 0) {
            const auto self = static_cast<std::uint32_t>(&node - nodes_.data());
            stack[top++] = node.first;
            stack[top++] = self + 1;
            continue;
        }
        for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
            const std::uint32_t ti = order_[i];
            const Tri& t = tris_[ti];
            // Moller-Trumbore.
            const Vec3 p = direction.cross(t.e2);
            const double det = t.e1.dot(p);
            if (det == 0.0) continue;
            const double inv_det = 1.0 / det;
            const Vec3 s = origin - t.a;
            const double u = s.dot(p) * inv_det;
            if (u < 0.0 || u > 1.0) continue;
            const Vec3 q = s.cross(t.e1);
            const double v = direction.dot(q) * inv_det;
            if (v < 0.0 || u + v > 1.0) continue;
            const double dist = t.e2.dot(q) * inv_det;
            if (dist > 1e-12 && (dist < best || (dist == best && ti < best_tri))) {
                best = dist;
                best_tri = ti;
            }
        }
    }
    if (!std::isfinite(best)) return std::nullopt;
    return RayHit{best, best_tri};
}

}  // namespace see::sim
