#include "see/cloud_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace see {

void write_cloud_ply(std::ostream& out, const ObservedCloud& cloud) {
    out << "ply\nformat ascii 1.0\n"
        << "element vertex " << cloud.size() << '\n'
        << "property float x\nproperty float y\nproperty float z\n"
        << "property uchar label\n"
        << "property float view_x\nproperty float view_y\nproperty float view_z\n"
        << "end_header\n";
    const auto old_precision = out.precision(9);
    for (PointId id = 0; id < cloud.size(); ++id) {
        const Point& p = cloud.point(id);
        const Point& v = cloud.capture_position(id);
        out << p.x() << ' ' << p.y() << ' ' << p.z() << ' ' << static_cast<int>(cloud.point_class(id)) << ' '
            << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
    out.precision(old_precision);
}

void write_cloud_ply(const std::filesystem::path& path, const ObservedCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw CloudIoError("cannot open " + path.string() + " for writing");
    write_cloud_ply(out, cloud);
    if (!out) throw CloudIoError("write failed: " + path.string());
}

std::vector<LabeledPoint> read_cloud_ply(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CloudIoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0) throw CloudIoError(path.string() + ": not a PLY file");

    std::size_t count = 0;
    bool in_vertex = false;
    std::vector<std::string> props;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt != "ascii") throw CloudIoError(path.string() + ": only ASCII point clouds are supported");
        } else if (word == "element") {
            std::string name;
            ls >> name;
            in_vertex = name == "vertex";
            if (in_vertex) ls >> count;
        } else if (word == "property" && in_vertex) {
            std::string type;
            std::string name;
            ls >> type >> name;
            props.push_back(name);
        } else if (word == "end_header") {
            break;
        }
    }

    auto index_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < props.size(); ++i) {
            if (props[i] == name) return static_cast<int>(i);
        }
        return -1;
    };
    const int ix = index_of("x");
    const int iy = index_of("y");
    const int iz = index_of("z");
    if (ix < 0 || iy < 0 || iz < 0) throw CloudIoError(path.string() + ": vertex element lacks x/y/z");
    const int il = index_of("label");
    const int ivx = index_of("view_x");
    const int ivy = index_of("view_y");
    const int ivz = index_of("view_z");

    std::vector<LabeledPoint> out;
    out.reserve(count);
    std::vector<double> values(props.size());
    for (std::size_t i = 0; i < count; ++i) {
        for (double& v : values) {
            if (!(in >> v)) throw CloudIoError(path.string() + ": truncated vertex list");
        }
        LabeledPoint lp;
        lp.position = Point(values[ix], values[iy], values[iz]);
        if (il >= 0) {
            const int label = static_cast<int>(values[il]);
            if (label < 0 || label > 2) throw CloudIoError(path.string() + ": bad label");
            lp.label = static_cast<PointClass>(label);
        }
        if (ivx >= 0 && ivy >= 0 && ivz >= 0) lp.capture_position = Point(values[ivx], values[ivy], values[ivz]);
        out.push_back(lp);
    }
    return out;
}

}  // namespace see
