#include "see/cloud_io.hpp"
#include "see/knn.hpp"
#include "see/observed_cloud.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

using namespace see;

namespace {

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
    return pts;
}

ObservedCloud cloud_of(const std::vector<Point>& pts, double cell = 0.1) {
    ObservedCloud c(CloudConfig{0.0, 0.0, cell});
    for (const Point& p : pts) c.append(p, Point::Zero());
    return c;
}

std::vector<std::size_t> sorted_ids(std::vector<PointId> ids) {
    std::sort(ids.begin(), ids.end());
    return {ids.begin(), ids.end()};
}

}  // namespace

TEST(UnitVector, NormalizesAndRejectsZero) {
    const UnitVector u(Vec3(3.0, 0.0, 4.0));
    EXPECT_NEAR(u.vec().norm(), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(u.x(), 0.6);
    EXPECT_THROW(UnitVector(Vec3::Zero()), GeometryError);
    EXPECT_THROW(UnitVector(Vec3(std::nan(""), 0.0, 0.0)), GeometryError);
}

TEST(NeighborsWithin, EmptyCloud) {
    const ObservedCloud c(CloudConfig{});
    EXPECT_TRUE(c.neighbors_within(Point::Zero(), 1.0).empty());
}

TEST(NeighborsWithin, SmallExample) {
    const ObservedCloud c = cloud_of({{0, 0, 0}, {0.05, 0, 0}, {1, 0, 0}});
    EXPECT_EQ(sorted_ids(c.neighbors_within(Point::Zero(), 0.1)), (std::vector<std::size_t>{0, 1}));
}

TEST(NeighborsWithin, ClosedBallBoundary) {
    const ObservedCloud c = cloud_of({{0, 0, 0}, {0.25, 0, 0}});
    EXPECT_EQ(c.neighbors_within(Point::Zero(), 0.25).size(), 2u);
}

TEST(NeighborsWithin, MatchesLinearScan) {
    std::mt19937_64 rng(7);
    const std::vector<Point> pts = random_points(rng, 500);
    const ObservedCloud c = cloud_of(pts, 0.07);
    std::uniform_real_distribution<double> ur(0.01, 0.6);
    for (const Point& q : random_points(rng, 50, -0.2, 1.2)) {
        const double r = ur(rng);
        EXPECT_EQ(sorted_ids(c.neighbors_within(q, r)), oracle::linear_scan(pts, q, r));
    }
}

TEST(NeighborsWithin, LargeRadiusMatchesLinearScan) {
    std::mt19937_64 rng(8);
    const std::vector<Point> pts = random_points(rng, 200);
    const ObservedCloud c = cloud_of(pts, 0.01);
    const Point q(0.4, 0.5, 0.6);
    EXPECT_EQ(sorted_ids(c.neighbors_within(q, 5.0)), oracle::linear_scan(pts, q, 5.0));
    EXPECT_EQ(sorted_ids(c.neighbors_within(q, 0.3)), oracle::linear_scan(pts, q, 0.3));
}

TEST(NeighborsWithin, Symmetric) {
    std::mt19937_64 rng(9);
    const std::vector<Point> pts = random_points(rng, 300);
    const ObservedCloud c = cloud_of(pts, 0.05);
    const double r = 0.12;
    for (PointId i = 0; i < pts.size(); ++i) {
        for (PointId j : c.neighbors_within(pts[i], r)) {
            const auto back = c.neighbors_within(pts[j], r);
            EXPECT_NE(std::find(back.begin(), back.end(), i), back.end());
        }
    }
}

TEST(KNearest, NearestOfTwo) {
    const std::vector<std::pair<Point, int>> items{{Point(0, 0, 0), 1}, {Point(2, 0, 0), 2}};
    EXPECT_EQ(k_nearest(items, 1, Point(0.1, 0, 0)), std::vector<int>{1});
}

TEST(KNearest, Saturates) {
    const std::vector<std::pair<Point, int>> items{{Point(3, 0, 0), 3}, {Point(1, 0, 0), 1}, {Point(2, 0, 0), 2}};
    EXPECT_EQ(k_nearest(items, 10, Point::Zero()), (std::vector<int>{1, 2, 3}));
}

TEST(KNearest, TiesKeepInputOrder) {
    const std::vector<std::pair<Point, int>> items{{Point(1, 0, 0), 5}, {Point(-1, 0, 0), 4}, {Point(0, 1, 0), 3}};
    EXPECT_EQ(k_nearest(items, 3, Point::Zero()), (std::vector<int>{5, 4, 3}));
}

TEST(KNearest, MatchesFullSort) {
    std::mt19937_64 rng(11);
    const std::vector<Point> keys = random_points(rng, 200);
    std::vector<std::pair<Point, int>> items;
    for (int i = 0; i < 200; ++i) items.emplace_back(keys[i], i);
    for (const Point& q : random_points(rng, 20)) {
        std::vector<int> all(200);
        for (int i = 0; i < 200; ++i) all[i] = i;
        std::stable_sort(all.begin(), all.end(), [&](int a, int b) {
            return (keys[a] - q).squaredNorm() < (keys[b] - q).squaredNorm();
        });
        all.resize(10);
        EXPECT_EQ(k_nearest(items, 10, q), all);
    }
}

TEST(InsertFiltered, FirstPointAndRejection) {
    const double eps = 0.01;
    ObservedCloud c(CloudConfig{eps, 0.0, 0.0});
    const View v{Point(0, 0, 1), UnitVector(0, 0, -1)};
    EXPECT_EQ(c.insert_filtered(std::vector<Point>{Point::Zero()}, v).size(), 1u);
    EXPECT_TRUE(c.insert_filtered(std::vector<Point>{Point(eps / 2, 0, 0)}, v).empty());
    EXPECT_EQ(c.capture_position(0), Point(0, 0, 1));
    EXPECT_EQ(c.point_class(0), PointClass::Outlier);
}

TEST(InsertFiltered, GridMatchesGreedyOracle) {
    const double eps = 0.01;
    std::vector<Point> batch;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            for (int k = 0; k < 10; ++k) batch.emplace_back(0.9 * eps * i, 0.9 * eps * j, 0.9 * eps * k);
        }
    }
    ObservedCloud c(CloudConfig{eps, 0.0, 0.0});
    const auto ids = c.insert_filtered(batch, View{Point(0, 0, 1), UnitVector(0, 0, -1)});
    const std::vector<Point> expected = oracle::greedy_filter(batch, eps);
    ASSERT_EQ(ids.size(), expected.size());
    for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(c.point(ids[i]), expected[i]);
}

TEST(InsertFiltered, Idempotent) {
    std::mt19937_64 rng(3);
    const std::vector<Point> pts = random_points(rng, 400);
    ObservedCloud c(CloudConfig{0.02, 0.0, 0.0});
    const View v{Point(0, 0, 2), UnitVector(0, 0, -1)};
    c.insert_filtered(pts, v);
    const std::vector<Point> stored = c.points();
    EXPECT_TRUE(c.insert_filtered(stored, v).empty());
}

TEST(InsertFiltered, SeparationInvariant) {
    std::mt19937_64 rng(4);
    const double eps = 0.03;
    ObservedCloud c(CloudConfig{eps, 0.0, 0.0});
    c.insert_filtered(random_points(rng, 2000), View{Point(0, 0, 2), UnitVector(0, 0, -1)});
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_GT((c.point(i) - c.point(j)).norm(), eps);
    }
}

TEST(CropToBounds, NoOpAndFullCrop) {
    std::mt19937_64 rng(5);
    const ObservedCloud c = cloud_of(random_points(rng, 100));
    const ObservedCloud same = c.crop_to_bounds(Bounds{Vec3::Constant(-1), Vec3::Constant(2)});
    ASSERT_EQ(same.size(), c.size());
    for (PointId i = 0; i < c.size(); ++i) EXPECT_EQ(same.point(i), c.point(i));
    EXPECT_TRUE(c.crop_to_bounds(Bounds{Vec3::Constant(5), Vec3::Constant(6)}).empty());
}

TEST(CropToBounds, MatchesContainmentAndKeepsClasses) {
    std::mt19937_64 rng(6);
    const std::vector<Point> pts = random_points(rng, 300);
    ObservedCloud c(CloudConfig{0.0, 0.1, 0.0});
    std::uniform_int_distribution<int> cls(0, 2);
    for (const Point& p : pts) c.append(p, p + Vec3(0, 0, 1));
    for (PointId i = 0; i < c.size(); ++i) c.set_class(i, static_cast<PointClass>(cls(rng)));
    const Bounds box{Vec3(0.2, 0.1, 0.0), Vec3(0.7, 0.9, 0.5)};
    const ObservedCloud cropped = c.crop_to_bounds(box);
    std::size_t k = 0;
    for (PointId i = 0; i < c.size(); ++i) {
        if (!box.contains(c.point(i))) continue;
        ASSERT_LT(k, cropped.size());
        EXPECT_EQ(cropped.point(k), c.point(i));
        EXPECT_EQ(cropped.point_class(k), c.point_class(i));
        EXPECT_EQ(cropped.capture_position(k), c.capture_position(i));
        ++k;
    }
    EXPECT_EQ(k, cropped.size());
    EXPECT_EQ(cropped.count(PointClass::Core) + cropped.count(PointClass::Frontier) +
                  cropped.count(PointClass::Outlier),
              cropped.size());
}

TEST(CloudPly, RoundTrip) {
    ObservedCloud c(CloudConfig{});
    c.append(Point(0.1, 0.2, 0.3), Point(1, 2, 3), PointClass::Core);
    c.append(Point(-0.5, 0.25, 0.125), Point(0, 0, 1), PointClass::Frontier);
    const auto path = std::filesystem::temp_directory_path() / "see_cloud_roundtrip.ply";
    write_cloud_ply(path, c);
    const auto back = read_cloud_ply(path);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].label, PointClass::Core);
    EXPECT_EQ(back[1].label, PointClass::Frontier);
    EXPECT_NEAR((back[1].position - c.point(1)).norm(), 0.0, 1e-7);
    EXPECT_NEAR((back[0].capture_position - Point(1, 2, 3)).norm(), 0.0, 1e-7);
    std::filesystem::remove(path);
}
