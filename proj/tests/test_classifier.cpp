#include "see/classifier.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace see;

namespace {

ObservationParams params_for(double r, std::int64_t k_min, double eps) {
    ObservationParams p;
    p.resolution_radius = r;
    p.k_min = k_min;
    p.min_separation = eps;
    return p;
}

const View kView{Point(0, 0, 5), UnitVector(0, 0, -1)};

std::vector<PointClass> classes_of(const ObservedCloud& c) {
    std::vector<PointClass> out;
    for (PointId i = 0; i < c.size(); ++i) out.push_back(c.point_class(i));
    return out;
}

}  // namespace

TEST(ClassifyUpdate, SinglePointIsOutlier) {
    ObservedCloud c(CloudConfig{0.001, 0.05, 0.0});
    const ClassificationDelta d = classify_update(c, std::vector<Point>{Point::Zero()}, kView, params_for(0.05, 3, 0.001));
    EXPECT_EQ(d.newly_outlier, std::set<PointId>{0});
    EXPECT_TRUE(d.newly_core.empty());
    EXPECT_EQ(c.capture_position(0), kView.position);
}

TEST(ClassifyUpdate, LineExample) {
    ObservedCloud c(CloudConfig{0.001, 0.05, 0.0});
    const std::vector<Point> pts{{0, 0, 0}, {0.01, 0, 0}, {0.02, 0, 0}, {0.065, 0, 0}};
    const ClassificationDelta d = classify_update(c, pts, kView, params_for(0.05, 3, 0.001));
    EXPECT_EQ(classes_of(c), (std::vector<PointClass>{PointClass::Core, PointClass::Core, PointClass::Core,
                                                      PointClass::Frontier}));
    EXPECT_EQ(d.newly_core, (std::set<PointId>{0, 1, 2}));
    EXPECT_EQ(d.newly_frontier, std::set<PointId>{3});
    EXPECT_EQ(c.frontiers(), std::set<PointId>{3});
}

TEST(ClassifyUpdate, RejectsMismatchedRadius) {
    ObservedCloud c(CloudConfig{0.001, 0.04, 0.0});
    EXPECT_THROW(classify_update(c, std::vector<Point>{Point::Zero()}, kView, params_for(0.05, 3, 0.001)),
                 std::invalid_argument);
}

TEST(ClassifyUpdate, ThreeBatchesMatchFromScratch) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> pts;
    for (int i = 0; i < 300; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
    const ObservationParams p = params_for(0.1, 5, 1e-6);
    ObservedCloud c(CloudConfig{p.min_separation, p.resolution_radius, 0.0});
    for (int b = 0; b < 3; ++b) {
        const std::vector<Point> batch(pts.begin() + 100 * b, pts.begin() + 100 * (b + 1));
        classify_update(c, batch, kView, p);
    }
    EXPECT_EQ(classes_of(c), oracle::classify_from_scratch(oracle::greedy_filter(pts, p.min_separation), 0.1, 5));
}

TEST(ClassifyUpdate, PartitionAndCoreMonotone) {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> g(0.0, 0.1);
    const ObservationParams p = params_for(0.06, 8, 0.002);
    ObservedCloud c(CloudConfig{p.min_separation, p.resolution_radius, 0.0});
    std::vector<PointClass> before;
    for (int batch = 0; batch < 6; ++batch) {
        std::vector<Point> pts;
        for (int i = 0; i < 150; ++i) pts.emplace_back(g(rng), g(rng), g(rng));
        const ClassificationDelta d = classify_update(c, pts, kView, p);
        EXPECT_EQ(c.count(PointClass::Core) + c.count(PointClass::Frontier) + c.count(PointClass::Outlier), c.size());
        for (PointId i = 0; i < before.size(); ++i) {
            if (before[i] == PointClass::Core) {
                EXPECT_EQ(c.point_class(i), PointClass::Core);
            }
        }
        for (PointId id : d.removed_frontiers) {
            EXPECT_TRUE(d.newly_core.contains(id) || d.newly_outlier.contains(id));
        }
        for (PointId id : d.newly_core) {
            EXPECT_FALSE(d.newly_frontier.contains(id) || d.newly_outlier.contains(id));
        }
        before = classes_of(c);
    }
}

TEST(ClassifyUpdate, BatchOrderIndependence) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    std::vector<Point> pts;
    for (int i = 0; i < 400; ++i) pts.emplace_back(u(rng), u(rng), u(rng));
    const ObservationParams p = params_for(0.08, 6, 1e-6);

    ObservedCloud forward(CloudConfig{p.min_separation, p.resolution_radius, 0.0});
    classify_update(forward, pts, kView, p);

    std::vector<Point> shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ObservedCloud other(CloudConfig{p.min_separation, p.resolution_radius, 0.0});
    for (int b = 0; b < 4; ++b) {
        classify_update(other, std::vector<Point>(shuffled.begin() + 100 * b, shuffled.begin() + 100 * (b + 1)),
                        kView, p);
    }
    ASSERT_EQ(forward.size(), other.size());
    for (PointId i = 0; i < other.size(); ++i) {
        const auto it = std::find(pts.begin(), pts.end(), other.point(i));
        ASSERT_NE(it, pts.end());
        EXPECT_EQ(other.point_class(i), forward.point_class(static_cast<PointId>(it - pts.begin())));
    }
}

TEST(DemoteFrontier, MovesToOutlier) {
    ObservedCloud c(CloudConfig{0.001, 0.05, 0.0});
    classify_update(c, std::vector<Point>{{0, 0, 0}, {0.01, 0, 0}, {0.02, 0, 0}, {0.065, 0, 0}}, kView,
                    params_for(0.05, 3, 0.001));
    const ClassificationDelta d = demote_frontier(c, 3);
    EXPECT_EQ(c.point_class(3), PointClass::Outlier);
    EXPECT_EQ(d.removed_frontiers, std::set<PointId>{3});
    EXPECT_TRUE(c.frontiers().empty());
    EXPECT_TRUE(demote_frontier(c, 0).empty());
}
