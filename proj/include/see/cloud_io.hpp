#ifndef SEE_CLOUD_IO_HPP_
#define SEE_CLOUD_IO_HPP_

#include "see/observed_cloud.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace see {

class CloudIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ASCII PLY: x y z, uchar label (0 core, 1 frontier, 2 outlier) and the
/// capturing view position as view_x view_y view_z.
void write_cloud_ply(std::ostream& out, const ObservedCloud& cloud);
void write_cloud_ply(const std::filesystem::path& path, const ObservedCloud& cloud);

struct LabeledPoint {
    Point position;
    PointClass label = PointClass::Outlier;
    Point capture_position = Point::Zero();
};

/// Reads the vertex positions of an ASCII PLY; label and view properties are
/// picked up when present.
std::vector<LabeledPoint> read_cloud_ply(const std::filesystem::path& path);

}  // namespace see

#endif  // SEE_CLOUD_IO_HPP_
