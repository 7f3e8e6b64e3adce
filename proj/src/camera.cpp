#include "gvo/camera.hpp"

#include <cmath>

namespace gvo::cam {

Vec2 project(const PinholeIntrinsics& intr, const Vec4& X) {
    if (X.z() <= kMinDepth) {
        throw NumericalError("project: point at or behind the image plane");
    }
    const double inv_z = 1.0 / X.z();
    return {intr.fx * X.x() * inv_z + intr.cx,
            intr.fy * X.y() * inv_z + intr.cy};
}

bool project_checked(const PinholeIntrinsics& intr, const Vec3& X, Vec2& px) {
    if (X.z() <= kMinDepth) return false;
    const double inv_z = 1.0 / X.z();
    px.x() = intr.fx * X.x() * inv_z + intr.cx;
    px.y() = intr.fy * X.y() * inv_z + intr.cy;
    return true;
}

Vec4 backproject(const PinholeIntrinsics& intr, double depth, double u,
                 double v) {
    if (!depth_valid(depth)) {
        throw InvalidArgumentError("backproject: invalid depth");
    }
    return {depth * (u - intr.cx) / intr.fx, depth * (v - intr.cy) / intr.fy,
            depth, 1.0};
}

Vec4 backproject(const PinholeIntrinsics& intr, const fields::DepthMap& depth,
                 const Eigen::Vector2i& px) {
    if (!depth.value.in_bounds(px.x(), px.y())) {
        throw InvalidArgumentError("backproject: pixel out of bounds");
    }
    if (!depth.valid_at(px.x(), px.y())) {
        throw InvalidArgumentError("backproject: invalid depth at pixel");
    }
    return backproject(intr, depth.value.at(px.x(), px.y()), px.x(), px.y());
}

fields::DepthMap normalize_depth(const StereoRig& rig,
                                 const fields::Grid<double>& depth_raw) {
    rig.validate();
    fields::DepthMap out(depth_raw.width(), depth_raw.height());
    for (int v = 0; v < depth_raw.height(); ++v) {
        for (int u = 0; u < depth_raw.width(); ++u) {
            const double d = depth_raw.at(u, v);
            if (depth_valid(d) && d <= rig.d_max) {
                out.value.at(u, v) = d / rig.d_max;
                out.valid.at(u, v) = 1;
            } else {
                out.value.at(u, v) = 0.0;
                out.valid.at(u, v) = 0;
            }
        }
    }
    return out;
}

double disparity_to_depth(const StereoRig& rig, double disparity) {
    if (!(disparity > kMinDisparity)) return invalid_depth();
    return rig.intr.fx * rig.baseline / disparity;
}

double depth_to_disparity(const StereoRig& rig, double depth) {
    if (!depth_valid(depth)) return std::numeric_limits<double>::quiet_NaN();
    return rig.intr.fx * rig.baseline / depth;
}

}  // namespace gvo::cam
