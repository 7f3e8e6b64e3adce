// se(3)/SE(3) algebra: tangent-space poses, exponential/logarithm maps and
// the Jacobians needed to differentiate functions of exp(p) with respect to p.
//
// Conventions (fixed, do not change silently):
//   - tangent ordering is (v, w): translation first, rotation second;
//   - exp(p) maps frame-t coordinates into frame-(t-1) coordinates when p is
//     the relative pose from t to t-1;
//   - perturbations compose on the right: p [+] d = log(exp(p) * exp(d)).
#ifndef GVO_LIE_HPP
#define GVO_LIE_HPP

#include <Eigen/Core>

#include "gvo/errors.hpp"

namespace gvo::lie {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Angle below which Rodrigues-type coefficients switch to series expansions.
inline constexpr double kSmallAngle = 1e-6;

/// Relative pose in the Lie algebra, translation in normalized scene units,
/// rotation as an axis-angle vector in radians. Canonical chart: |w| < pi.
struct TangentPose {
    Vec3 v = Vec3::Zero();
    Vec3 w = Vec3::Zero();

    Vec6 to_vector() const {
        Vec6 p;
        p << v, w;
        return p;
    }
    static TangentPose from_vector(const Vec6& p) {
        return TangentPose{p.head<3>(), p.tail<3>()};
    }
    bool finite() const { return v.allFinite() && w.allFinite(); }
};

/// Element of SE(3): rotation matrix plus translation.
struct RigidTransform {
    Mat3 R = Mat3::Identity();
    Vec3 t = Vec3::Zero();

    static RigidTransform identity() { return RigidTransform{}; }
};

Mat3 skew(const Vec3& v);

// SO(3) pieces. so3_exp uses Rodrigues' formula with a series branch below
// kSmallAngle; so3_log throws DegenerateRotationError for angles >= pi - 1e-6.
Mat3 so3_exp(const Vec3& w);
Vec3 so3_log(const Mat3& R);
Mat3 so3_left_jacobian(const Vec3& w);
Mat3 so3_left_jacobian_inverse(const Vec3& w);

RigidTransform exp_map(const TangentPose& p);
TangentPose log_map(const RigidTransform& T);
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform inverse(const RigidTransform& T);
Vec3 apply(const RigidTransform& T, const Vec3& x);

/// True when R is orthonormal with det +1 to within `tol` (Frobenius).
bool is_valid_rotation(const Mat3& R, double tol = 1e-9);

/// 6x6 right Jacobian of the SE(3) exponential at p:
/// exp(p + d) = exp(p) * exp(J_r(p) d) + O(|d|^2).
Mat6 se3_right_jacobian(const TangentPose& p);

namespace detail {
// Branch-separated SO(3) exponentials, exposed so tests can pin the
// series/closed-form agreement at the switch threshold.
Mat3 so3_exp_closed(const Vec3& w);
Mat3 so3_exp_series(const Vec3& w);
double one_minus_cos(double theta);
}  // namespace detail

}  // namespace gvo::lie

#endif
