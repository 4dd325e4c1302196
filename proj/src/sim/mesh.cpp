#include "see/sim/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace see::sim {

namespace {

double triangle_area(const SceneMesh& m, const Triangle& t) {
    return 0.5 * (m.vertices[t[1]] - m.vertices[t[0]]).cross(m.vertices[t[2]] - m.vertices[t[0]]).norm();
}

void add_polygon(SceneMesh& mesh, const std::vector<std::uint32_t>& poly, const std::string& where) {
    if (poly.size() < 3) throw MeshError(where + ": face with fewer than three vertices");
    for (std::uint32_t i : poly) {
        if (i >= mesh.vertices.size()) throw MeshError(where + ": vertex index out of range");
    }
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) mesh.triangles.push_back({poly[0], poly[i], poly[i + 1]});
}

void drop_degenerate(SceneMesh& mesh, const std::string& where) {
    std::erase_if(mesh.triangles, [&](const Triangle& t) { return !(triangle_area(mesh, t) > 0.0); });
    if (mesh.triangles.empty()) throw MeshError(where + ": mesh has no non-degenerate triangles");
}

SceneMesh load_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open " + path.string());
    SceneMesh mesh;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::uint32_t> poly;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (tag == "v") {
            double x = 0.0;
            double y = 0.0;
            double z = 0.0;
            if (!(ls >> x >> y >> z)) throw MeshError(where + ": malformed vertex");
            mesh.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            poly.clear();
            std::string tok;
            while (ls >> tok) {
                // v, v/vt, v//vn or v/vt/vn; negative indices are relative.
                long idx = 0;
                try {
                    idx = std::stol(tok.substr(0, tok.find('/')));
                } catch (const std::exception&) {
                    throw MeshError(where + ": malformed face index '" + tok + "'");
                }
                const long n = static_cast<long>(mesh.vertices.size());
                const long resolved = idx < 0 ? n + idx : idx - 1;
                if (idx == 0 || resolved < 0 || resolved >= n) throw MeshError(where + ": face index out of range");
                poly.push_back(static_cast<std::uint32_t>(resolved));
            }
            add_polygon(mesh, poly, where);
        }
    }
    if (mesh.vertices.empty()) throw MeshError(path.string() + ": no vertices");
    drop_degenerate(mesh, path.string());
    return mesh;
}

enum class PlyFormat { Ascii, BinaryLittle, BinaryBig };

struct PlyProperty {
    std::string name;
    std::string type;
    bool is_list = false;
    std::string count_type;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> props;
};

std::size_t type_size(const std::string& t) {
    static const std::map<std::string, std::size_t> sizes{
        {"char", 1},   {"int8", 1},    {"uchar", 1}, {"uint8", 1},   {"short", 2},  {"int16", 2},
        {"ushort", 2}, {"uint16", 2},  {"int", 4},   {"int32", 4},   {"uint", 4},   {"uint32", 4},
        {"float", 4},  {"float32", 4}, {"double", 8}, {"float64", 8}};
    const auto it = sizes.find(t);
    if (it == sizes.end()) throw MeshError("unsupported PLY property type '" + t + "'");
    return it->second;
}

template <class T>
T load_raw(const unsigned char* bytes, bool swap) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, bytes, sizeof(T));
    if (swap) std::reverse(buf, buf + sizeof(T));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

class PlyReader {
public:
    PlyReader(std::istream& in, PlyFormat fmt) : in_(in), fmt_(fmt) {}

    double read(const std::string& type) {
        if (fmt_ == PlyFormat::Ascii) {
            double v = 0.0;
            if (!(in_ >> v)) throw MeshError("truncated PLY body");
            return v;
        }
        const std::size_t n = type_size(type);
        unsigned char bytes[8];
        if (!in_.read(reinterpret_cast<char*>(bytes), static_cast<std::streamsize>(n))) {
            throw MeshError("truncated PLY body");
        }
        const bool swap = (fmt_ == PlyFormat::BinaryBig) == (std::endian::native == std::endian::little);
        if (type == "char" || type == "int8") return load_raw<std::int8_t>(bytes, swap);
        if (type == "uchar" || type == "uint8") return load_raw<std::uint8_t>(bytes, swap);
        if (type == "short" || type == "int16") return load_raw<std::int16_t>(bytes, swap);
        if (type == "ushort" || type == "uint16") return load_raw<std::uint16_t>(bytes, swap);
        if (type == "int" || type == "int32") return load_raw<std::int32_t>(bytes, swap);
        if (type == "uint" || type == "uint32") return load_raw<std::uint32_t>(bytes, swap);
        if (type == "float" || type == "float32") return load_raw<float>(bytes, swap);
        return load_raw<double>(bytes, swap);
    }

private:
    std::istream& in_;
    PlyFormat fmt_;
};

SceneMesh load_ply(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MeshError("cannot open " + path.string());
    const std::string where = path.string();
    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0) throw MeshError(where + ": missing 'ply' magic");

    PlyFormat fmt = PlyFormat::Ascii;
    bool have_format = false;
    std::vector<PlyElement> elements;
    for (;;) {
        if (!std::getline(in, line)) throw MeshError(where + ": header not terminated");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "end_header") break;
        if (word == "format") {
            std::string f;
            ls >> f;
            if (f == "ascii") fmt = PlyFormat::Ascii;
            else if (f == "binary_little_endian") fmt = PlyFormat::BinaryLittle;
            else if (f == "binary_big_endian") fmt = PlyFormat::BinaryBig;
            else throw MeshError(where + ": unknown format '" + f + "'");
            have_format = true;
        } else if (word == "element") {
            PlyElement e;
            if (!(ls >> e.name >> e.count)) throw MeshError(where + ": malformed element line");
            elements.push_back(e);
        } else if (word == "property") {
            if (elements.empty()) throw MeshError(where + ": property before element");
            PlyProperty p;
            ls >> p.type;
            if (p.type == "list") {
                p.is_list = true;
                ls >> p.count_type >> p.type;
                type_size(p.count_type);
            }
            if (!(ls >> p.name)) throw MeshError(where + ": malformed property line");
            type_size(p.type);
            elements.back().props.push_back(p);
        }
    }
    if (!have_format) throw MeshError(where + ": missing format line");

    SceneMesh mesh;
    PlyReader reader(in, fmt);
    std::vector<std::uint32_t> poly;
    for (const PlyElement& e : elements) {
        const bool is_vertex = e.name == "vertex";
        const bool is_face = e.name == "face";
        int ix = -1;
        int iy = -1;
        int iz = -1;
        for (std::size_t i = 0; i < e.props.size(); ++i) {
            if (e.props[i].name == "x") ix = static_cast<int>(i);
            if (e.props[i].name == "y") iy = static_cast<int>(i);
            if (e.props[i].name == "z") iz = static_cast<int>(i);
        }
        if (is_vertex && (ix < 0 || iy < 0 || iz < 0)) throw MeshError(where + ": vertex element lacks x/y/z");
        std::vector<double> scalars(e.props.size());
        for (std::size_t row = 0; row < e.count; ++row) {
            poly.clear();
            for (std::size_t i = 0; i < e.props.size(); ++i) {
                const PlyProperty& p = e.props[i];
                if (!p.is_list) {
                    scalars[i] = reader.read(p.type);
                    continue;
                }
                const double n = reader.read(p.count_type);
                if (n < 0 || n > 1e6) throw MeshError(where + ": bad list length");
                const bool indices = is_face && (p.name == "vertex_indices" || p.name == "vertex_index");
                for (int k = 0; k < static_cast<int>(n); ++k) {
                    const double v = reader.read(p.type);
                    if (indices) {
                        if (v < 0) throw MeshError(where + ": negative face index");
                        poly.push_back(static_cast<std::uint32_t>(v));
                    }
                }
            }
            if (is_vertex) mesh.vertices.emplace_back(scalars[ix], scalars[iy], scalars[iz]);
            if (is_face) add_polygon(mesh, poly, where);
        }
    }
    if (mesh.vertices.empty()) throw MeshError(where + ": no vertices");
    drop_degenerate(mesh, where);
    return mesh;
}

}  // namespace

Bounds SceneMesh::bounds() const {
    if (vertices.empty()) return Bounds{Vec3::Zero(), Vec3::Zero()};
    Bounds b{vertices.front(), vertices.front()};
    for (const Point& v : vertices) {
        b.min = b.min.cwiseMin(v);
        b.max = b.max.cwiseMax(v);
    }
    return b;
}

void SceneMesh::validate() const {
    if (vertices.empty() || triangles.empty()) throw MeshError("mesh is empty");
    for (const Point& v : vertices) {
        if (!is_finite(v)) throw MeshError("mesh has a non-finite vertex");
    }
    for (const Triangle& t : triangles) {
        for (std::uint32_t i : t) {
            if (i >= vertices.size()) throw MeshError("triangle index out of range");
        }
        if (!(triangle_area(*this, t) > 0.0)) throw MeshError("mesh has a zero-area triangle");
    }
}

SceneMesh load_mesh(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    SceneMesh mesh;
    if (ext == ".obj") mesh = load_obj(path);
    else if (ext == ".ply") mesh = load_ply(path);
    else throw MeshError(path.string() + ": unsupported mesh extension '" + ext + "'");
    mesh.validate();
    return mesh;
}

SceneMesh scale_to_box(const SceneMesh& mesh, const Vec3& box) {
    if (!(box.minCoeff() > 0.0)) throw MeshError("target box must have positive extent");
    const Bounds b = mesh.bounds();
    const Vec3 extent = b.extent();
    double scale = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        if (extent[i] > 0.0) scale = std::min(scale, box[i] / extent[i]);
    }
    if (!std::isfinite(scale)) throw MeshError("mesh has zero extent");
    SceneMesh out = mesh;
    const Vec3 c = b.center();
    for (Point& v : out.vertices) v = (v - c) * scale;
    return out;
}

SceneMesh make_icosphere(double radius, int subdivisions) {
    if (!(radius > 0.0) || subdivisions < 0) throw MeshError("icosphere needs a positive radius");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    SceneMesh m;
    m.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                  {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                   {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                   {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (Point& v : m.vertices) v.normalize();
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
        auto mid = [&](std::uint32_t a, std::uint32_t b) {
            const auto key = std::minmax(a, b);
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const auto id = static_cast<std::uint32_t>(m.vertices.size());
            m.vertices.push_back((m.vertices[a] + m.vertices[b]).normalized());
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<Triangle> next;
        next.reserve(m.triangles.size() * 4);
        for (const Triangle& tri : m.triangles) {
            const std::uint32_t ab = mid(tri[0], tri[1]);
            const std::uint32_t bc = mid(tri[1], tri[2]);
            const std::uint32_t ca = mid(tri[2], tri[0]);
            next.push_back({tri[0], ab, ca});
            next.push_back({tri[1], bc, ab});
            next.push_back({tri[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.triangles = std::move(next);
    }
    for (Point& v : m.vertices) v *= radius;
    return m;
}

SceneMesh make_box(const Vec3& lo, const Vec3& hi) {
    SceneMesh m;
    for (int i = 0; i < 8; ++i) {
        m.vertices.emplace_back((i & 1) ? hi.x() : lo.x(), (i & 2) ? hi.y() : lo.y(), (i & 4) ? hi.z() : lo.z());
    }
    m.triangles = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6}, {0, 1, 4}, {1, 5, 4},
                   {2, 6, 3}, {3, 6, 7}, {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
    m.validate();
    return m;
}

SceneMesh load_scene(const std::string& spec) {
    const std::string prefix = "builtin:sphere:";
    if (spec.rfind(prefix, 0) != 0) return load_mesh(spec);
    std::istringstream ss(spec.substr(prefix.size()));
    double radius = 0.0;
    int subdivisions = 5;
    char sep = 0;
    if (!(ss >> radius)) throw MeshError("bad builtin sphere spec '" + spec + "'");
    if (ss >> sep && !(sep == ':' && ss >> subdivisions)) throw MeshError("bad builtin sphere spec '" + spec + "'");
    return make_icosphere(radius, subdivisions);
}

}  // namespace see::sim
