#include "gvo/lie.hpp"

#include <cmath>

#include <Eigen/LU>

namespace gvo::lie {

Mat3 skew(const Vec3& v) {
    Mat3 m;
    // clang-format off
    m <<     0, -v.z(),  v.y(),
         v.z(),      0, -v.x(),
        -v.y(),  v.x(),      0;
    // clang-format on
    return m;
}

namespace detail {

// 1 - cos(theta) without cancellation.
double one_minus_cos(double theta) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

Mat3 so3_exp_closed(const Vec3& w) {
    const double theta = w.norm();
    const Mat3 W = skew(w);
    const double a = std::sin(theta) / theta;
    const double b = one_minus_cos(theta) / (theta * theta);
    return Mat3::Identity() + a * W + b * W * W;
}

Mat3 so3_exp_series(const Vec3& w) {
    const double t2 = w.squaredNorm();
    const Mat3 W = skew(w);
    const double a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    const double b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    return Mat3::Identity() + a * W + b * W * W;
}

}  // namespace detail

Mat3 so3_exp(const Vec3& w) {
    return (w.norm() < kSmallAngle) ? detail::so3_exp_series(w)
                                    : detail::so3_exp_closed(w);
}

Vec3 so3_log(const Mat3& R) {
    const double cos_theta =
        std::clamp(0.5 * (R.trace() - 1.0), -1.0, 1.0);
    const double theta = std::acos(cos_theta);
    if (theta >= M_PI - 1e-6) {
        throw DegenerateRotationError(
            "so3_log: rotation angle within 1e-6 of pi");
    }
    Vec3 half_vee(0.5 * (R(2, 1) - R(1, 2)), 0.5 * (R(0, 2) - R(2, 0)),
                  0.5 * (R(1, 0) - R(0, 1)));
    if (theta < kSmallAngle) {
        // theta/sin(theta) expanded around zero.
        const double t2 = theta * theta;
        return (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0) * half_vee;
    }
    return (theta / std::sin(theta)) * half_vee;
}

Mat3 so3_left_jacobian(const Vec3& w) {
    const double theta = w.norm();
    const Mat3 W = skew(w);
    double b, c;
    if (theta < kSmallAngle) {
        const double t2 = theta * theta;
        b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
        c = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
    } else {
        const double t2 = theta * theta;
        b = detail::one_minus_cos(theta) / t2;
        c = (theta - std::sin(theta)) / (t2 * theta);
    }
    return Mat3::Identity() + b * W + c * W * W;
}

Mat3 so3_left_jacobian_inverse(const Vec3& w) {
    const double theta = w.norm();
    const Mat3 W = skew(w);
    double d;
    // The closed-form coefficient loses all significance for small theta
    // (double cancellation), so the series window is much wider here than
    // for the forward map.
    if (theta < 1e-2) {
        const double t2 = theta * theta;
        d = 1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0;
    } else {
        const double t2 = theta * theta;
        d = (1.0 - theta * std::sin(theta) /
                       (2.0 * detail::one_minus_cos(theta))) /
            t2;
    }
    return Mat3::Identity() - 0.5 * W + d * W * W;
}

RigidTransform exp_map(const TangentPose& p) {
    if (!p.finite()) {
        throw InvalidArgumentError("exp_map: non-finite tangent pose");
    }
    RigidTransform T;
    T.R = so3_exp(p.w);
    T.t = so3_left_jacobian(p.w) * p.v;
    return T;
}

TangentPose log_map(const RigidTransform& T) {
    if (!is_valid_rotation(T.R)) {
        throw InvalidArgumentError("log_map: input rotation is not in SO(3)");
    }
    TangentPose p;
    p.w = so3_log(T.R);
    p.v = so3_left_jacobian_inverse(p.w) * T.t;
    return p;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
    RigidTransform c;
    c.R = a.R * b.R;
    c.t = a.R * b.t + a.t;
    return c;
}

RigidTransform inverse(const RigidTransform& T) {
    RigidTransform inv;
    inv.R = T.R.transpose();
    inv.t = -(inv.R * T.t);
    return inv;
}

Vec3 apply(const RigidTransform& T, const Vec3& x) { return T.R * x + T.t; }

bool is_valid_rotation(const Mat3& R, double tol) {
    if (!R.allFinite()) return false;
    const double ortho = (R.transpose() * R - Mat3::Identity()).norm();
    return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol;
}

Mat6 se3_right_jacobian(const TangentPose& p) {
    // J_r(p) = J_l(-p); the Q block follows Barfoot's closed form with
    // series fallbacks for the trigonometric coefficients.
    const Vec3 rho = -p.v;
    const Vec3 phi = -p.w;
    const double theta = phi.norm();

    double c2, c3, c4;
    if (theta < 1e-2) {
        const double t2 = theta * theta;
        c2 = 1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0;
        c3 = 1.0 / 24.0 - t2 / 720.0 + t2 * t2 / 40320.0;
        c4 = 1.0 / 120.0 - t2 / 2520.0 + t2 * t2 / 120960.0;
    } else {
        const double t2 = theta * theta;
        const double t4 = t2 * t2;
        const double s = std::sin(theta);
        c2 = (theta - s) / (t2 * theta);
        c3 = (0.5 * t2 - detail::one_minus_cos(theta)) / t4;
        c4 = (2.0 * theta - 3.0 * s + theta * std::cos(theta)) /
             (2.0 * t4 * theta);
    }

    const Mat3 P = skew(rho);
    const Mat3 F = skew(phi);
    const Mat3 FP = F * P;
    const Mat3 PF = P * F;
    const Mat3 FPF = FP * F;
    const Mat3 Q = 0.5 * P + c2 * (FP + PF + FPF) +
                   c3 * (F * FP + PF * F - 3.0 * FPF) +
                   c4 * (FPF * F + F * FPF);

    const Mat3 J = so3_left_jacobian(phi);
    Mat6 Jr = Mat6::Zero();
    Jr.topLeftCorner<3, 3>() = J;
    Jr.topRightCorner<3, 3>() = Q;
    Jr.bottomRightCorner<3, 3>() = J;
    return Jr;
}

}  // namespace gvo::lie
