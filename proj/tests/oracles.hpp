// Brute-force reference implementations used only by tests.
#ifndef SEE_TESTS_ORACLES_HPP_
#define SEE_TESTS_ORACLES_HPP_

#include "see/geometry.hpp"
#include "see/observed_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace see::oracle {

inline std::vector<std::size_t> linear_scan(const std::vector<Point>& pts, const Point& c, double r) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if ((pts[i] - c).norm() <= r) out.push_back(i);
    }
    return out;
}

/// Sequential epsilon filter: keep a point iff no kept point lies within eps.
inline std::vector<Point> greedy_filter(const std::vector<Point>& pts, double eps) {
    std::vector<Point> kept;
    for (const Point& p : pts) {
        bool near = false;
        for (const Point& q : kept) {
            if ((p - q).norm() <= eps) {
                near = true;
                break;
            }
        }
        if (!near) kept.push_back(p);
    }
    return kept;
}

/// From-scratch partition by the set definitions: core iff the closed r-ball
/// holds at least k_min points (itself included); frontier iff not core and
/// some neighbor is core; outlier otherwise.
inline std::vector<PointClass> classify_from_scratch(const std::vector<Point>& pts, double r, std::int64_t k_min) {
    const std::size_t n = pts.size();
    std::vector<std::vector<std::size_t>> nbrs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if ((pts[i] - pts[j]).norm() <= r) nbrs[i].push_back(j);
        }
    }
    std::vector<bool> core(n);
    for (std::size_t i = 0; i < n; ++i) core[i] = static_cast<std::int64_t>(nbrs[i].size()) >= k_min;
    std::vector<PointClass> out(n, PointClass::Outlier);
    for (std::size_t i = 0; i < n; ++i) {
        if (core[i]) {
            out[i] = PointClass::Core;
            continue;
        }
        for (std::size_t j : nbrs[i]) {
            if (core[j]) {
                out[i] = PointClass::Frontier;
                break;
            }
        }
    }
    return out;
}

/// Near-uniform directions on the unit sphere (Fibonacci lattice).
inline std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> dirs;
    dirs.reserve(static_cast<std::size_t>(n));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double rho = std::sqrt(1.0 - z * z);
        const double phi = golden * i;
        dirs.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
    }
    return dirs;
}

struct MaximinSample {
    Vec3 direction;
    double min_angle;
};

/// Sampled direction maximizing the smallest angle to any member of J.
inline MaximinSample sampled_maximin(const std::vector<Vec3>& J, int samples = 10000) {
    MaximinSample best{Vec3::UnitZ(), -1.0};
    for (const Vec3& u : fibonacci_sphere(samples)) {
        double worst = std::numbers::pi;
        for (const Vec3& j : J) worst = std::min(worst, std::acos(std::clamp(u.dot(j), -1.0, 1.0)));
        if (worst > best.min_angle) best = {u, worst};
    }
    return best;
}

inline double min_angle_to(const Vec3& u, const std::vector<Vec3>& J) {
    double worst = std::numbers::pi;
    for (const Vec3& j : J) worst = std::min(worst, std::acos(std::clamp(u.normalized().dot(j), -1.0, 1.0)));
    return worst;
}

inline double angle_deg(const Vec3& a, const Vec3& b) {
    return std::acos(std::clamp(a.normalized().dot(b.normalized()), -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

/// Uniform random unit vector.
inline Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec3 v;
    do {
        v = Vec3(g(rng), g(rng), g(rng));
    } while (v.norm() < 1e-9);
    return v.normalized();
}

/// Random unit vector at an angle in [lo, hi] radians from `axis`.
inline Vec3 random_in_band(std::mt19937_64& rng, const Vec3& axis, double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double cz = std::cos(lo) - u(rng) * (std::cos(lo) - std::cos(hi));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    const Vec3 a = axis.normalized();
    const Vec3 seed = std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = (seed - seed.dot(a) * a).normalized();
    const Vec3 e2 = a.cross(e1);
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    return cz * a + sz * (std::cos(phi) * e1 + std::sin(phi) * e2);
}

}  // namespace see::oracle

#endif  // SEE_TESTS_ORACLES_HPP_
