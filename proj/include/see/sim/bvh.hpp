#ifndef SEE_SIM_BVH_HPP_
#define SEE_SIM_BVH_HPP_

#include "see/sim/mesh.hpp"

#include <optional>
#include <vector>

namespace see::sim {

struct RayHit {
    double distance = 0.0;  ///< along the unit ray direction
    std::uint32_t triangle = 0;
};

/// Bounding volume hierarchy over a static triangle mesh. Triangles are
/// two-sided.
class Bvh {
public:
    explicit Bvh(const SceneMesh& mesh);

    /// Nearest hit with distance > 0 along origin + t * direction (unit).
    std::optional<RayHit> intersect(const Point& origin, const Vec3& direction) const;

    std::size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        Vec3 lo;
        Vec3 hi;
        std::uint32_t first = 0;  ///< first triangle (leaf) or right child (inner)
        std::uint32_t count = 0;  ///< triangles in a leaf, 0 for inner nodes
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);

    struct Tri {
        Vec3 a;
        Vec3 e1;
        Vec3 e2;
    };
    std::vector<Tri> tris_;
    std::vector<std::uint32_t> order_;
    std::vector<Vec3> centroids_;
    std::vector<Node> nodes_;
};

}  // namespace see::sim

#endif  // SEE_SIM_BVH_HPP_
