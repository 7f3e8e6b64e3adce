#include <doctest.h>

#include <cmath>
#include <random>

#include "gvo/camera.hpp"

using namespace gvo::cam;
using gvo::fields::DepthMap;
using gvo::fields::Grid;

namespace {

PinholeIntrinsics test_intr() { return {280.0, 280.0, 159.5, 127.5}; }

StereoRig test_rig() {
    StereoRig rig;
    rig.intr = test_intr();
    rig.baseline = 0.0045;
    rig.d_max = 0.15;
    return rig;
}

}  // namespace

TEST_SUITE("camera") {

TEST_CASE("optical axis projects to the principal point") {
    const auto intr = test_intr();
    const Vec2 px = project(intr, Vec4(0, 0, 1, 1));
    CHECK(px.x() == intr.cx);
    CHECK(px.y() == intr.cy);
}

TEST_CASE("projecting an inverse-constructed point recovers the pixel") {
    const auto intr = test_intr();
    const double u = 201.25, v = 33.5, z = 0.42;
    const Vec4 X(z * (u - intr.cx) / intr.fx, z * (v - intr.cy) / intr.fy, z,
                 1.0);
    const Vec2 px = project(intr, X);
    CHECK(std::abs(px.x() - u) < 1e-10);
    CHECK(std::abs(px.y() - v) < 1e-10);
}

TEST_CASE("project rejects points behind the camera") {
    CHECK_THROWS_AS((void)project(test_intr(), Vec4(0, 0, 0, 1)),
                    gvo::NumericalError);
    Vec2 px;
    CHECK_FALSE(project_checked(test_intr(), Vec3(0, 0, -1), px));
}

TEST_CASE("project and backproject are mutually inverse on a random map") {
    const auto intr = test_intr();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> depth_dist(0.05, 1.0);
    double max_err = 0.0;
    for (int v = 0; v < 64; ++v) {
        for (int u = 0; u < 80; ++u) {
            const double d = depth_dist(rng);
            const Vec2 px = project(intr, backproject(intr, d, u, v));
            max_err = std::max(max_err, std::abs(px.x() - u));
            max_err = std::max(max_err, std::abs(px.y() - v));
        }
    }
    CHECK(max_err < 1e-9);
}

TEST_CASE("backproject basics") {
    const auto intr = test_intr();
    const Vec4 X = backproject(intr, 1.0, intr.cx, intr.cy);
    CHECK((X - Vec4(0, 0, 1, 1)).norm() == 0.0);

    // Doubling depth doubles the Euclidean components.
    const Vec4 a = backproject(intr, 0.3, 10.0, 20.0);
    const Vec4 b = backproject(intr, 0.6, 10.0, 20.0);
    CHECK((b.head<3>() - 2.0 * a.head<3>()).norm() < 1e-15);
}

TEST_CASE("raster backproject validates pixel state") {
    DepthMap depth(4, 4);
    depth.value.at(1, 1) = 0.5;
    depth.valid.at(1, 1) = 1;
    const auto intr = test_intr();
    CHECK(backproject(intr, depth, {1, 1}).z() == 0.5);
    CHECK_THROWS_AS((void)backproject(intr, depth, {2, 2}),
                    gvo::InvalidArgumentError);
    CHECK_THROWS_AS((void)backproject(intr, depth, {9, 0}),
                    gvo::InvalidArgumentError);
}

TEST_CASE("disparity to depth closed form") {
    StereoRig rig;
    rig.intr.fx = 500.0;
    rig.intr.fy = 500.0;
    rig.baseline = 0.005;
    rig.d_max = 1.0;
    CHECK(disparity_to_depth(rig, 25.0) == doctest::Approx(0.1).epsilon(1e-12));

    // Halving disparity doubles depth.
    CHECK(disparity_to_depth(rig, 12.5) ==
          doctest::Approx(0.2).epsilon(1e-12));

    // Guard: zero disparity is an invalid marker, not infinity.
    const double d = disparity_to_depth(rig, 0.0);
    CHECK_FALSE(depth_valid(d));
    CHECK_FALSE(std::isinf(d));
}

TEST_CASE("disparity round trip on (0, d_max]") {
    const StereoRig rig = test_rig();
    for (double depth = 0.01; depth <= rig.d_max; depth += 0.01) {
        const double rt = disparity_to_depth(rig, depth_to_disparity(rig, depth));
        CHECK(std::abs(rt - depth) < 1e-12);
    }
}

TEST_CASE("normalize_depth divides, bounds and invalidates") {
    StereoRig rig = test_rig();
    rig.d_max = 0.2;
    Grid<double> raw(3, 1, 0.0);
    raw.at(0, 0) = 0.1;   // interior value
    raw.at(1, 0) = 0.2;   // boundary
    raw.at(2, 0) = 0.25;  // out of range -> invalid, not clamped
    const DepthMap dm = normalize_depth(rig, raw);
    CHECK(dm.value.at(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dm.valid_at(0, 0));
    CHECK(dm.value.at(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dm.valid_at(1, 0));
    CHECK_FALSE(dm.valid_at(2, 0));
}

TEST_CASE("normalization preserves depth ordering") {
    StereoRig rig = test_rig();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(0.001, rig.d_max);
    Grid<double> raw(32, 1, 0.0);
    for (int u = 0; u < 32; ++u) raw.at(u, 0) = dist(rng);
    const DepthMap dm = normalize_depth(rig, raw);
    for (int a = 0; a < 32; ++a) {
        for (int b = 0; b < 32; ++b) {
            if (raw.at(a, 0) < raw.at(b, 0)) {
                CHECK(dm.value.at(a, 0) < dm.value.at(b, 0));
            }
        }
    }
}

}  // TEST_SUITE
