#include <doctest.h>

#include <cmath>
#include <random>

#include "gvo/lie.hpp"

using namespace gvo::lie;

namespace {

TangentPose random_tangent(std::mt19937_64& rng, double max_angle) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vec3 axis(unit(rng), unit(rng), unit(rng));
    while (axis.norm() < 1e-3) axis = Vec3(unit(rng), unit(rng), unit(rng));
    axis.normalize();
    std::uniform_real_distribution<double> ang(0.0, max_angle);
    TangentPose p;
    p.w = ang(rng) * axis;
    p.v = Vec3(unit(rng), unit(rng), unit(rng));
    return p;
}

Mat3 rot_z(double angle) {
    Mat3 R;
    // clang-format off
    R << std::cos(angle), -std::sin(angle), 0,
         std::sin(angle),  std::cos(angle), 0,
                       0,                0, 1;
    // clang-format on
    return R;
}

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("exp_map of zero is the identity") {
    const RigidTransform T = exp_map(TangentPose{});
    CHECK((T.R - Mat3::Identity()).norm() == 0.0);
    CHECK(T.t.norm() == 0.0);
}

TEST_CASE("exp_map of a pure translation keeps v as-is") {
    TangentPose p;
    p.v = Vec3(1, 2, 3);
    const RigidTransform T = exp_map(p);
    CHECK((T.R - Mat3::Identity()).norm() == 0.0);
    CHECK((T.t - Vec3(1, 2, 3)).norm() == 0.0);
}

TEST_CASE("quarter turn about z maps (1,0,0) to (0,1,0)") {
    TangentPose p;
    p.w = Vec3(0, 0, M_PI / 2);
    const Vec3 y = apply(exp_map(p), Vec3(1, 0, 0));
    CHECK((y - Vec3(0, 1, 0)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("tangent ordering is translation-first") {
    // Canonical convention pin: (v, w) with w in the tail of the packed
    // vector. A quarter-turn about z with v = (1,0,0) must produce the
    // closed-form V(w) v translation, not the raw v.
    TangentPose p;
    p.v = Vec3(1, 0, 0);
    p.w = Vec3(0, 0, M_PI / 2);
    const Vec6 packed = p.to_vector();
    CHECK(packed(0) == 1.0);
    CHECK(packed(5) == doctest::Approx(M_PI / 2));

    const RigidTransform T = exp_map(p);
    // V(w) v for w = (0,0,a): x-component = sin(a)/a, y = (1-cos(a))/a.
    const double a = M_PI / 2;
    const Vec3 expected(std::sin(a) / a, (1 - std::cos(a)) / a, 0);
    CHECK((T.t - expected).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("log_map of identity is zero") {
    const TangentPose p = log_map(RigidTransform::identity());
    CHECK(p.v.norm() == 0.0);
    CHECK(p.w.norm() == 0.0);
}

TEST_CASE("exp/log round trip over 1000 random canonical tangents") {
    std::mt19937_64 rng(42);
    double max_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const TangentPose p = random_tangent(rng, 3.0);
        const TangentPose q = log_map(exp_map(p));
        max_err = std::max(max_err,
                           (q.to_vector() - p.to_vector())
                               .lpNorm<Eigen::Infinity>());
    }
    CHECK(max_err < 1e-9);
}

TEST_CASE("log_map of a small planar rotation") {
    RigidTransform T;
    T.R = rot_z(0.1);
    const TangentPose p = log_map(T);
    CHECK((p.w - Vec3(0, 0, 0.1)).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(p.v.norm() < 1e-12);
}

TEST_CASE("log_map rejects rotations at pi") {
    RigidTransform T;
    T.R = rot_z(M_PI);
    CHECK_THROWS_AS((void)log_map(T), gvo::DegenerateRotationError);
}

TEST_CASE("exp_map rejects non-finite input") {
    TangentPose p;
    p.v = Vec3(std::nan(""), 0, 0);
    CHECK_THROWS_AS((void)exp_map(p), gvo::InvalidArgumentError);
}

TEST_CASE("compose with identity and with the inverse") {
    std::mt19937_64 rng(7);
    const RigidTransform T = exp_map(random_tangent(rng, 2.0));
    const RigidTransform TI = compose(T, RigidTransform::identity());
    CHECK((TI.R - T.R).norm() == 0.0);
    CHECK((TI.t - T.t).norm() == 0.0);

    const RigidTransform E = compose(T, inverse(T));
    CHECK((E.R - Mat3::Identity()).norm() < 1e-10);
    CHECK(E.t.norm() < 1e-10);
}

TEST_CASE("composing z-rotations adds their angles") {
    RigidTransform A, B;
    A.R = rot_z(0.3);
    B.R = rot_z(0.4);
    const TangentPose p = log_map(compose(A, B));
    CHECK((p.w - Vec3(0, 0, 0.7)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("compose is associative on random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const RigidTransform a = exp_map(random_tangent(rng, 2.5));
        const RigidTransform b = exp_map(random_tangent(rng, 2.5));
        const RigidTransform c = exp_map(random_tangent(rng, 2.5));
        const RigidTransform lhs = compose(compose(a, b), c);
        const RigidTransform rhs = compose(a, compose(b, c));
        CHECK((lhs.R - rhs.R).norm() < 1e-12);
        CHECK((lhs.t - rhs.t).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("inverse basics and involution") {
    CHECK(inverse(RigidTransform::identity()).t.norm() == 0.0);

    RigidTransform T;
    T.t = Vec3(1, -2, 3);
    const RigidTransform inv = inverse(T);
    CHECK((inv.t + Vec3(1, -2, 3)).norm() == 0.0);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const RigidTransform R = exp_map(random_tangent(rng, 2.5));
        const RigidTransform RR = inverse(inverse(R));
        CHECK((RR.R - R.R).norm() < 1e-12);
        CHECK((RR.t - R.t).lpNorm<Eigen::Infinity>() < 1e-12);
    }
}

TEST_CASE("apply basics") {
    CHECK((apply(RigidTransform::identity(), Vec3(4, 5, 6)) - Vec3(4, 5, 6))
              .norm() == 0.0);
    RigidTransform T;
    T.t = Vec3(1, 0, 0);
    CHECK((apply(T, Vec3(0, 0, 5)) - Vec3(1, 0, 5)).norm() == 0.0);
}

TEST_CASE("apply preserves distances") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const RigidTransform T = exp_map(random_tangent(rng, 3.0));
        const Vec3 x(unit(rng), unit(rng), unit(rng));
        const Vec3 y(unit(rng), unit(rng), unit(rng));
        const double before = (x - y).norm();
        const double after = (apply(T, x) - apply(T, y)).norm();
        CHECK(std::abs(before - after) < 1e-12);
    }
}

TEST_CASE("series and closed-form exponentials agree at the branch switch") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vec3 axis(unit(rng), unit(rng), unit(rng));
    axis.normalize();

    // At |w| = 1e-4 both branches are well conditioned; they must agree.
    const Vec3 w4 = 1e-4 * axis;
    const double diff =
        (detail::so3_exp_series(w4) - detail::so3_exp_closed(w4)).norm();
    CHECK(diff / detail::so3_exp_closed(w4).norm() < 1e-6);

    // At |w| = 1e-8 the series branch must still produce a valid rotation
    // consistent with a first-order step.
    const Vec3 w8 = 1e-8 * axis;
    const Mat3 R = so3_exp(w8);
    CHECK(is_valid_rotation(R, 1e-12));
    CHECK((R - (Mat3::Identity() + skew(w8))).norm() < 1e-15);
}

TEST_CASE("right Jacobian matches finite differences of exp") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double h = 1e-5;
    for (int trial = 0; trial < 30; ++trial) {
        const TangentPose p = random_tangent(rng, 2.0);
        const Mat6 Jr = se3_right_jacobian(p);
        Vec6 d;
        for (int i = 0; i < 6; ++i) d(i) = unit(rng);
        d.normalize();

        const RigidTransform inv_T = inverse(exp_map(p));
        const Vec6 plus =
            log_map(compose(inv_T,
                            exp_map(TangentPose::from_vector(p.to_vector() +
                                                             h * d))))
                .to_vector();
        const Vec6 minus =
            log_map(compose(inv_T,
                            exp_map(TangentPose::from_vector(p.to_vector() -
                                                             h * d))))
                .to_vector();
        const Vec6 fd = (plus - minus) / (2.0 * h);
        CHECK(((Jr * d) - fd).lpNorm<Eigen::Infinity>() < 1e-8);
    }
}

}  // TEST_SUITE
