#include "gvo/residuals.hpp"

#include <cmath>

#include "gvo/camera.hpp"

namespace gvo::res {

namespace {

struct PoseContext {
    lie::RigidTransform T;
    Mat6 Jr_transposed;
};

PoseContext make_context(const TangentPose& p) {
    return {lie::exp_map(p), lie::se3_right_jacobian(p).transpose()};
}

// Right-perturbation derivative rows: for a 3-row direction v,
// v^T dY/d(delta) = [a^T, (P x a)^T] with a = R^T v.
inline Vec6 perturbation_row(const lie::Mat3& R, const Vec3& P,
                             const Vec3& v) {
    const Vec3 a = R.transpose() * v;
    Vec6 row;
    row << a, P.cross(a);
    return row;
}

// Shared per-pixel evaluation. Returns false for behind-camera pixels.
// When `derivs` is non-null the delta-convention gradients of r2 and r3 are
// written there (without the Jr chain).
struct RawPixel {
    double r2 = 0.0, r3 = 0.0;
    Vec6 dr2 = Vec6::Zero();
    Vec6 dr3 = Vec6::Zero();
};

inline bool eval_pixel(const ResidualWorkspace& ws, const PoseContext& ctx,
                       size_t k, bool with_derivs, RawPixel& out) {
    const Vec3& P = ws.points_t[k];
    const Vec3 Y = ctx.T.R * P + ctx.T.t;
    if (Y.z() <= cam::kMinDepth) return false;

    const Vec3 e3 = Y - ws.points_warped[k];
    out.r3 = e3.norm();

    const double inv_z = 1.0 / Y.z();
    const Eigen::Vector2d px(ws.intr.fx * Y.x() * inv_z + ws.intr.cx,
                             ws.intr.fy * Y.y() * inv_z + ws.intr.cy);
    const Eigen::Vector2d e2 = px - ws.target_px[k];
    const double e2_norm = e2.norm();
    out.r2 = ws.scale2d * e2_norm;

    if (!with_derivs) return true;

    // d(r3)/d(delta): unit residual direction through dY/d(delta).
    // The norm is non-differentiable at exactly zero residual; the zero
    // subgradient used there is consistent with the vanishing factor in
    // the objective gradient.
    if (out.r3 > 0.0) {
        out.dr3 = perturbation_row(ctx.T.R, P, e3 / out.r3);
    } else {
        out.dr3.setZero();
    }

    if (e2_norm > 0.0) {
        const Eigen::Vector2d dir = e2 / e2_norm;
        // dir^T dpi/dY, with dpi/dY the pinhole projection Jacobian at Y.
        Vec3 v;
        v.x() = dir.x() * ws.intr.fx * inv_z;
        v.y() = dir.y() * ws.intr.fy * inv_z;
        v.z() = -(dir.x() * ws.intr.fx * Y.x() +
                  dir.y() * ws.intr.fy * Y.y()) *
                inv_z * inv_z;
        out.dr2 = ws.scale2d * perturbation_row(ctx.T.R, P, v);
    } else {
        out.dr2.setZero();
    }
    return true;
}

}  // namespace

ResidualWorkspace build_workspace(const fields::FramePair& pair) {
    ResidualWorkspace ws;
    ws.width = pair.width();
    ws.height = pair.height();
    ws.intr = pair.rig.intr;
    ws.scale2d = std::sqrt(1.0 / (static_cast<double>(ws.width) * ws.height));
    ws.omega = fields::build_omega(pair);
    ws.points_t.reserve(ws.omega.size());
    ws.points_warped.reserve(ws.omega.size());
    ws.target_px.reserve(ws.omega.size());
    for (const auto& px : ws.omega) {
        ws.points_t.push_back(
            cam::backproject(pair.rig.intr, pair.depth_t, px).head<3>());
        const auto q = fields::warp_backproject(pair, px);
        // build_omega already validated the warp target.
        ws.points_warped.push_back(q->head<3>());
        ws.target_px.push_back(px.cast<double>() +
                               pair.flow.at(px.x(), px.y()));
    }
    ws.w2d.assign(ws.omega.size(), 1.0);
    ws.w3d.assign(ws.omega.size(), 1.0);
    return ws;
}

void set_weights(ResidualWorkspace& ws, const fields::WeightMap& w2d,
                 const fields::WeightMap& w3d) {
    if (w2d.value.width() != ws.width || w2d.value.height() != ws.height ||
        w3d.value.width() != ws.width || w3d.value.height() != ws.height) {
        throw InvalidArgumentError("set_weights: weight map dimensions "
                                   "disagree with the workspace");
    }
    for (size_t k = 0; k < ws.omega.size(); ++k) {
        const auto& px = ws.omega[k];
        const double a = w2d.value.at(px.x(), px.y());
        const double b = w3d.value.at(px.x(), px.y());
        if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0)) {
            throw InvalidArgumentError(
                "set_weights: weight outside [0, 1]");
        }
        ws.w2d[k] = a;
        ws.w3d[k] = b;
    }
}

void set_uniform_weights(ResidualWorkspace& ws, double w2d, double w3d) {
    if (!(w2d >= 0.0 && w2d <= 1.0) || !(w3d >= 0.0 && w3d <= 1.0)) {
        throw InvalidArgumentError("set_uniform_weights: weight outside [0, 1]");
    }
    ws.w2d.assign(ws.omega.size(), w2d);
    ws.w3d.assign(ws.omega.size(), w3d);
}

double residual_2d(const ResidualWorkspace& ws, const TangentPose& p,
                   size_t k) {
    RawPixel raw;
    if (!eval_pixel(ws, make_context(p), k, false, raw)) return 0.0;
    return raw.r2;
}

double residual_3d(const ResidualWorkspace& ws, const TangentPose& p,
                   size_t k) {
    RawPixel raw;
    if (!eval_pixel(ws, make_context(p), k, false, raw)) return 0.0;
    return raw.r3;
}

double residual_combined(const ResidualWorkspace& ws, const TangentPose& p,
                         size_t k) {
    RawPixel raw;
    if (!eval_pixel(ws, make_context(p), k, false, raw)) return 0.0;
    return ws.w2d[k] * raw.r2 + ws.w3d[k] * raw.r3;
}

double objective(const ResidualWorkspace& ws, const TangentPose& p,
                 int* behind_camera) {
    const PoseContext ctx = make_context(p);
    double f = 0.0;
    int behind = 0;
    RawPixel raw;
    for (size_t k = 0; k < ws.size(); ++k) {
        if (!eval_pixel(ws, ctx, k, false, raw)) {
            ++behind;
            continue;
        }
        const double r = ws.w2d[k] * raw.r2 + ws.w3d[k] * raw.r3;
        f += r * r;
    }
    if (behind_camera) *behind_camera = behind;
    if (!std::isfinite(f)) {
        throw NumericalError("objective: non-finite accumulation");
    }
    return f;
}

double objective_value_and_gradient(const ResidualWorkspace& ws,
                                    const TangentPose& p, Vec6& grad,
                                    int* behind_camera) {
    const PoseContext ctx = make_context(p);
    double f = 0.0;
    Vec6 g_delta = Vec6::Zero();
    int behind = 0;
    RawPixel raw;
    for (size_t k = 0; k < ws.size(); ++k) {
        if (!eval_pixel(ws, ctx, k, true, raw)) {
            ++behind;
            continue;
        }
        const double r = ws.w2d[k] * raw.r2 + ws.w3d[k] * raw.r3;
        f += r * r;
        g_delta += (2.0 * r) * (ws.w2d[k] * raw.dr2 + ws.w3d[k] * raw.dr3);
    }
    if (behind_camera) *behind_camera = behind;
    if (!std::isfinite(f) || !g_delta.allFinite()) {
        throw NumericalError("objective: non-finite accumulation");
    }
    grad = ctx.Jr_transposed * g_delta;
    return f;
}

Vec6 objective_gradient(const ResidualWorkspace& ws, const TangentPose& p,
                        int* behind_camera) {
    Vec6 g;
    objective_value_and_gradient(ws, p, g, behind_camera);
    return g;
}

PixelDerivatives pixel_derivatives(const ResidualWorkspace& ws,
                                   const TangentPose& p, size_t k) {
    const PoseContext ctx = make_context(p);
    PixelDerivatives out;
    RawPixel raw;
    if (!eval_pixel(ws, ctx, k, true, raw)) {
        out.behind_camera = true;
        return out;
    }
    out.r2 = raw.r2;
    out.r3 = raw.r3;
    out.dr2 = ctx.Jr_transposed * raw.dr2;
    out.dr3 = ctx.Jr_transposed * raw.dr3;
    return out;
}

Mat6 objective_hessian_fd(const ResidualWorkspace& ws, const TangentPose& p,
                          double step) {
    Mat6 H;
    const Vec6 p0 = p.to_vector();
    for (int i = 0; i < 6; ++i) {
        Vec6 plus = p0, minus = p0;
        plus(i) += step;
        minus(i) -= step;
        const Vec6 gp = objective_gradient(ws, TangentPose::from_vector(plus));
        const Vec6 gm =
            objective_gradient(ws, TangentPose::from_vector(minus));
        H.col(i) = (gp - gm) / (2.0 * step);
    }
    return 0.5 * (H + H.transpose());
}

}  // namespace gvo::res
