#ifndef SEE_SIM_MESH_HPP_
#define SEE_SIM_MESH_HPP_

#include "see/geometry.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace see::sim {

class MeshError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Triangle = std::array<std::uint32_t, 3>;

struct SceneMesh {
    std::vector<Point> vertices;
    std::vector<Triangle> triangles;

    Bounds bounds() const;
    /// Throws MeshError on out-of-range indices, non-finite vertices or
    /// zero-area triangles.
    void validate() const;
};

/// OBJ or PLY (ASCII, binary little/big endian) by extension. Faces with
/// more than three vertices are fan-triangulated and zero-area triangles
/// dropped; a mesh left without triangles is an error.
SceneMesh load_mesh(const std::filesystem::path& path);

/// Uniformly scales the mesh so it fits `box` (binding axis touches) and
/// centres its bounding box on the origin.
SceneMesh scale_to_box(const SceneMesh& mesh, const Vec3& box);

/// Subdivided icosahedron with all vertices on the sphere.
SceneMesh make_icosphere(double radius, int subdivisions);

/// Axis-aligned box with 8 vertices and 12 outward-wound triangles.
SceneMesh make_box(const Vec3& min, const Vec3& max);

/// "builtin:sphere:<radius>[:<subdivisions>]" or a mesh path.
SceneMesh load_scene(const std::string& spec);

}  // namespace see::sim

#endif  // SEE_SIM_MESH_HPP_
