#include "see/sim/config.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace see::sim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::istringstream ss(v);
    double x = 0.0;
    if (!(ss >> x) || !(ss >> std::ws).eof()) throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    std::istringstream ss(v);
    long long x = 0;
    if (!(ss >> x) || !(ss >> std::ws).eof()) throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    return x;
}

Vec3 to_vec3(const std::string& key, const std::string& v) {
    std::istringstream ss(v);
    Vec3 x;
    if (!(ss >> x.x() >> x.y() >> x.z()) || !(ss >> std::ws).eof()) {
        throw ConfigError("'" + key + "' expects three numbers, got '" + v + "'");
    }
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("'" + key + "' expects true or false, got '" + v + "'");
}

}  // namespace

ObservationParams ExperimentConfig::params() const {
    ObservationParams p = derive_params(partial, sensor);
    p.validate();
    if (!(p.registration_radius > 0.0)) throw ConfigError("registration_radius must be positive");
    return p;
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        if (!kv.emplace(key, value).second) throw ConfigError("duplicate key '" + key + "'");
    }

    ExperimentConfig c;
    auto take = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    if (auto v = take("model")) c.model = *v;
    if (c.model == "small") {
        c.partial = ObservationParams::small_model();
        c.sensor = SensorIntrinsics::rgbd_camera();
        c.sensor_name = "rgbd";
        c.scale_box = Vec3(0.8, 0.8, 0.6);
    } else if (c.model == "large") {
        c.partial = ObservationParams::large_model();
        c.sensor = SensorIntrinsics::rotating_lidar();
        c.sensor_name = "lidar";
        c.scale_box = Vec3(40.0, 40.0, 40.0);
    } else {
        throw ConfigError("model must be 'small' or 'large', got '" + c.model + "'");
    }

    if (auto v = take("sensor")) {
        if (*v == "rgbd") c.sensor = SensorIntrinsics::rgbd_camera();
        else if (*v == "lidar") c.sensor = SensorIntrinsics::rotating_lidar();
        else throw ConfigError("sensor must be 'rgbd' or 'lidar', got '" + *v + "'");
        c.sensor_name = *v;
    }
    if (auto v = take("sensor.width_px")) c.sensor.width_px = static_cast<int>(to_int("sensor.width_px", *v));
    if (auto v = take("sensor.height_px")) c.sensor.height_px = static_cast<int>(to_int("sensor.height_px", *v));
    if (auto v = take("sensor.fov_x_deg")) c.sensor.fov_x_deg = to_double("sensor.fov_x_deg", *v);
    if (auto v = take("sensor.fov_y_deg")) c.sensor.fov_y_deg = to_double("sensor.fov_y_deg", *v);
    if (auto v = take("noise_sigma")) c.sensor.range_noise_sigma = to_double("noise_sigma", *v);

    const std::map<std::string, double ObservationParams::*> reals{
        {"density", &ObservationParams::density},
        {"resolution_radius", &ObservationParams::resolution_radius},
        {"view_distance", &ObservationParams::view_distance},
        {"min_separation", &ObservationParams::min_separation},
        {"occlusion_distance", &ObservationParams::occlusion_distance},
        {"visibility_distance", &ObservationParams::visibility_distance},
        {"registration_radius", &ObservationParams::registration_radius}};
    for (const auto& [key, member] : reals) {
        if (auto v = take(key)) c.partial.*member = to_double(key, *v);
    }
    if (auto v = take("view_updates")) c.partial.view_updates = static_cast<int>(to_int("view_updates", *v));

    if (auto v = take("mesh")) {
        c.mesh = *v;
        if (c.mesh.rfind("builtin:", 0) != 0 && std::filesystem::path(c.mesh).is_relative() && !base_dir.empty()) {
            c.mesh = (base_dir / c.mesh).lexically_normal().string();
        }
    }
    if (auto v = take("scale_to_box")) {
        if (*v == "none") c.scale_box.reset();
        else c.scale_box = to_vec3("scale_to_box", *v);
    }
    if (auto v = take("seed_first")) c.seed_first = static_cast<std::uint64_t>(to_int("seed_first", *v));
    if (auto v = take("seeds")) c.seeds = static_cast<int>(to_int("seeds", *v));
    if (auto v = take("max_views")) c.max_views = static_cast<int>(to_int("max_views", *v));
    if (auto v = take("max_adjustments_per_frontier")) {
        c.max_adjustments_per_frontier = static_cast<int>(to_int("max_adjustments_per_frontier", *v));
    }
    if (auto v = take("initial_position")) c.initial_position = to_vec3("initial_position", *v);
    if (auto v = take("initial_target")) c.initial_target = to_vec3("initial_target", *v);
    if (auto v = take("timing")) {
        if (*v == "wall") c.timing = TimingMode::Wall;
        else if (*v == "none") c.timing = TimingMode::None;
        else throw ConfigError("timing must be 'wall' or 'none', got '" + *v + "'");
    }
    if (auto v = take("plots")) c.write_plots = to_bool("plots", *v);

    if (!kv.empty()) throw ConfigError("unknown key '" + kv.begin()->first + "'");
    if (c.mesh.empty()) throw ConfigError("config is missing 'mesh'");
    if (c.seeds < 1) throw ConfigError("seeds must be at least 1");
    if (c.max_views < 1) throw ConfigError("max_views must be at least 1");
    if (c.max_adjustments_per_frontier < 1) throw ConfigError("max_adjustments_per_frontier must be at least 1");
    c.sensor.validate();
    c.params();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    return parse_config(in, path.parent_path());
}

void write_config_echo(std::ostream& out, const ExperimentConfig& c) {
    const ObservationParams p = c.params();
    const auto old_precision = out.precision(10);
    out << "mesh = " << c.mesh << '\n';
    out << "scale_to_box = ";
    if (c.scale_box) out << c.scale_box->x() << ' ' << c.scale_box->y() << ' ' << c.scale_box->z() << '\n';
    else out << "none\n";
    out << "model = " << c.model << '\n'
        << "sensor = " << c.sensor_name << '\n'
        << "sensor.width_px = " << c.sensor.width_px << '\n'
        << "sensor.height_px = " << c.sensor.height_px << '\n'
        << "sensor.fov_x_deg = " << c.sensor.fov_x_deg << '\n'
        << "sensor.fov_y_deg = " << c.sensor.fov_y_deg << '\n'
        << "noise_sigma = " << c.sensor.range_noise_sigma << '\n'
        << "density = " << p.density << '\n'
        << "resolution_radius = " << p.resolution_radius << '\n'
        << "view_distance = " << p.view_distance << '\n'
        << "min_separation = " << p.min_separation << '\n'
        << "occlusion_distance = " << p.occlusion_distance << '\n'
        << "visibility_distance = " << p.visibility_distance << '\n'
        << "view_updates = " << p.view_updates << '\n'
        << "k_min = " << p.k_min << '\n'
        << "registration_radius = " << p.registration_radius << '\n'
        << "seed_first = " << c.seed_first << '\n'
        << "seeds = " << c.seeds << '\n'
        << "max_views = " << c.max_views << '\n'
        << "max_adjustments_per_frontier = " << c.max_adjustments_per_frontier << '\n';
    if (c.initial_position) out << "initial_position = " << c.initial_position->transpose() << '\n';
    if (c.initial_target) out << "initial_target = " << c.initial_target->transpose() << '\n';
    out << "timing = " << (c.timing == TimingMode::Wall ? "wall" : "none") << '\n';
    out.precision(old_precision);
}

}  // namespace see::sim
