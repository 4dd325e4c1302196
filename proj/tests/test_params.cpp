#include "see/params.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace see;

TEST(DeriveParams, SmallModelDensity) {
    const ObservationParams p = derive_params(ObservationParams::small_model(), SensorIntrinsics::rgbd_camera());
    EXPECT_NEAR(p.density / 490738.0, 1.0, 1e-3);
    EXPECT_NEAR(p.min_separation / 0.003, 1.0, 0.05);
    EXPECT_DOUBLE_EQ(p.resolution_radius, 0.03);
    EXPECT_DOUBLE_EQ(p.view_distance, 0.5);
    EXPECT_NO_THROW(p.validate());
}

TEST(DeriveParams, LargeModelViewDistance) {
    const ObservationParams p = derive_params(ObservationParams::large_model(), SensorIntrinsics::rotating_lidar());
    EXPECT_NEAR(p.view_distance / 35.6, 1.0, 5e-3);
    EXPECT_NEAR(p.min_separation / 0.06, 1.0, 0.05);
    EXPECT_NO_THROW(p.validate());
}

TEST(DeriveParams, UnitResolutionRadius) {
    ObservationParams partial;
    partial.density = 9.0 / (4.0 * std::numbers::pi);
    partial.view_distance = 1.0;
    const ObservationParams p = derive_params(partial, SensorIntrinsics::rgbd_camera());
    EXPECT_NEAR(p.resolution_radius, 1.0, 1e-15);
}

TEST(DeriveParams, SmallModelCoreThreshold) {
    // 4/3 pi * 490738.x * 0.03^3 = 55.50..., so the ceiling is 56.
    const ObservationParams p = derive_params(ObservationParams::small_model(), SensorIntrinsics::rgbd_camera());
    EXPECT_EQ(p.k_min, 56);
}

TEST(DeriveParams, UserFieldsUntouched) {
    ObservationParams partial = ObservationParams::small_model();
    partial.min_separation = 0.004;
    const ObservationParams p = derive_params(partial, SensorIntrinsics::rgbd_camera());
    EXPECT_DOUBLE_EQ(p.min_separation, 0.004);
    EXPECT_DOUBLE_EQ(p.occlusion_distance, 0.5);
}

TEST(DeriveParams, UnresolvableThrows) {
    EXPECT_THROW(derive_params(ObservationParams{}, SensorIntrinsics::rgbd_camera()), ConfigError);
    ObservationParams only_d;
    only_d.view_distance = 1.0;
    EXPECT_THROW(derive_params(only_d, SensorIntrinsics::rgbd_camera()), ConfigError);
}

TEST(DeriveParams, NegativeRadicandNamesParameters) {
    ObservationParams partial;
    partial.density = 1e9;
    partial.resolution_radius = 1.0;
    try {
        derive_params(partial, SensorIntrinsics::rgbd_camera());
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("density"), std::string::npos);
        EXPECT_NE(msg.find("resolution radius"), std::string::npos);
    }
}

TEST(DeriveParams, RoundTrip) {
    const SensorIntrinsics s = SensorIntrinsics::rgbd_camera();
    for (double d : {0.3, 0.5, 1.0, 2.5}) {
        ObservationParams a;
        a.resolution_radius = 0.03;
        a.view_distance = d;
        const ObservationParams with_rho = derive_params(a, s);
        ObservationParams b;
        b.resolution_radius = 0.03;
        b.density = with_rho.density;
        EXPECT_NEAR(derive_params(b, s).view_distance / d, 1.0, 1e-6);
    }
}

TEST(DeriveParams, ViewDistanceDecreasesWithDensity) {
    double previous = std::numeric_limits<double>::infinity();
    for (double rho = 50.0; rho <= 5000.0; rho *= 1.7) {
        ObservationParams p;
        p.density = rho;
        p.resolution_radius = 0.15;
        const double d = derive_params(p, SensorIntrinsics::rotating_lidar()).view_distance;
        EXPECT_LT(d, previous);
        previous = d;
    }
}

TEST(SensorIntrinsics, Validation) {
    EXPECT_NO_THROW(SensorIntrinsics::rgbd_camera().validate());
    EXPECT_THROW((SensorIntrinsics{0, 10, 60, 40, 0.0}.validate()), ConfigError);
    EXPECT_THROW((SensorIntrinsics{10, 10, 180, 40, 0.0}.validate()), ConfigError);
    EXPECT_THROW((SensorIntrinsics{10, 10, 60, 40, -1.0}.validate()), ConfigError);
}

TEST(ObservationParams, ValidateRejectsBadOrdering) {
    ObservationParams p = derive_params(ObservationParams::small_model(), SensorIntrinsics::rgbd_camera());
    p.visibility_distance = 0.05;  // exceeds r
    EXPECT_THROW(p.validate(), ConfigError);
}
