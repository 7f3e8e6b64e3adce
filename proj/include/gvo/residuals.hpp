// The weighted 2D/3D geometric objective: per-pixel residuals over the valid
// set Omega, their sum of squares and the analytic gradient with respect to
// the pose.
//
// Derivative convention: gradients are plain partial derivatives with
// respect to the 6 tangent coordinates of p. They are assembled from
// right-perturbation Jacobians (p [+] d = log(exp(p) exp(d))) chained with
// the right Jacobian of the exponential at p, so central finite differences
// in p reproduce them directly.
#ifndef GVO_RESIDUALS_HPP
#define GVO_RESIDUALS_HPP

#include <vector>

#include <Eigen/Core>

#include "gvo/fields.hpp"
#include "gvo/lie.hpp"

namespace gvo::res {

using lie::Mat6;
using lie::TangentPose;
using lie::Vec3;
using lie::Vec6;

/// Precomputed per-pixel quantities for one pose solve. Geometry is fixed at
/// construction; weights may be swapped with set_weights without rebuilding.
struct ResidualWorkspace {
    int width = 0, height = 0;
    cam::PinholeIntrinsics intr;
    std::vector<Eigen::Vector2i> omega;    // valid pixels, row-major
    std::vector<Vec3> points_t;            // pi_3D(D_t, x) for x in omega
    std::vector<Vec3> points_warped;       // pi_3D(D_{t-1}, x + F_t(x))
    std::vector<Eigen::Vector2d> target_px;  // x + F_t(x)
    std::vector<double> w2d, w3d;          // weights gathered over omega
    double scale2d = 0.0;                  // sqrt(1 / (X * Y))

    size_t size() const { return omega.size(); }
};

/// Builds the workspace from a frame pair with uniform weights (1, 1).
ResidualWorkspace build_workspace(const fields::FramePair& pair);

/// Re-gathers weights over omega. Maps must match the frame dimensions and
/// hold values in [0, 1].
void set_weights(ResidualWorkspace& ws, const fields::WeightMap& w2d,
                 const fields::WeightMap& w3d);
void set_uniform_weights(ResidualWorkspace& ws, double w2d, double w3d);

/// Scaled 2D reprojection residual of pixel k at pose p (Euclidean pixel
/// error times sqrt(1/XY)). Behind-camera projections contribute 0 and are
/// counted by the caller.
double residual_2d(const ResidualWorkspace& ws, const TangentPose& p,
                   size_t k);

/// Point-to-point 3D residual of pixel k at pose p, in normalized scene
/// units (Euclidean norm over the first three homogeneous components).
double residual_3d(const ResidualWorkspace& ws, const TangentPose& p,
                   size_t k);

/// w2d[k] * residual_2d + w3d[k] * residual_3d.
double residual_combined(const ResidualWorkspace& ws, const TangentPose& p,
                         size_t k);

/// Sum over omega of the squared combined residual. Fixed-order sequential
/// summation in omega order; reruns are bitwise identical.
/// `behind_camera` (optional) receives the number of skipped pixels.
double objective(const ResidualWorkspace& ws, const TangentPose& p,
                 int* behind_camera = nullptr);

/// Analytic gradient of `objective` with respect to p.
Vec6 objective_gradient(const ResidualWorkspace& ws, const TangentPose& p,
                        int* behind_camera = nullptr);

/// Objective and gradient in one pass (the solver's hot path).
double objective_value_and_gradient(const ResidualWorkspace& ws,
                                    const TangentPose& p, Vec6& grad,
                                    int* behind_camera = nullptr);

/// Per-pixel values and pose derivatives at p, used for DDN mixed partials:
/// r2, r3 and their gradients with respect to p (zero for behind-camera
/// pixels, matching their zero contribution to the objective).
struct PixelDerivatives {
    double r2 = 0.0, r3 = 0.0;
    Vec6 dr2 = Vec6::Zero();
    Vec6 dr3 = Vec6::Zero();
    bool behind_camera = false;
};
PixelDerivatives pixel_derivatives(const ResidualWorkspace& ws,
                                   const TangentPose& p, size_t k);

/// 6x6 Hessian of `objective` at p via central finite differences of the
/// analytic gradient (step 1e-6), symmetrized.
Mat6 objective_hessian_fd(const ResidualWorkspace& ws, const TangentPose& p,
                          double step = 1e-6);

}  // namespace gvo::res

#endif
