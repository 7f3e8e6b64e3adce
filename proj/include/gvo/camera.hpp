// Pinhole projection / back-projection, stereo disparity-to-depth and depth
// normalization. Pixel centers sit at integer coordinates: pixel (0,0) has
// its center at (0.0, 0.0).
#ifndef GVO_CAMERA_HPP
#define GVO_CAMERA_HPP

#include <cmath>
#include <limits>

#include <Eigen/Core>

#include "gvo/errors.hpp"
#include "gvo/rasters.hpp"

namespace gvo::cam {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

// Points closer than this to the image plane are treated as behind-camera.
inline constexpr double kMinDepth = 1e-6;
// Disparities at or below this are unresolvable and flagged invalid.
inline constexpr double kMinDisparity = 0.25;

struct PinholeIntrinsics {
    double fx = 0, fy = 0;
    double cx = 0, cy = 0;
};

/// Rectified stereo rig. `baseline` and `d_max` are in scene units; depth
/// maps are stored normalized by `d_max`.
struct StereoRig {
    PinholeIntrinsics intr;
    double baseline = 0;
    double d_max = 0;

    void validate() const {
        if (!(intr.fx > 0) || !(intr.fy > 0))
            throw InvalidArgumentError("StereoRig: focal lengths must be > 0");
        if (!(baseline > 0))
            throw InvalidArgumentError("StereoRig: baseline must be > 0");
        if (!(d_max > 0))
            throw InvalidArgumentError("StereoRig: d_max must be > 0");
    }
};

/// Projects a homogeneous 3D point to pixel coordinates.
/// Throws NumericalError when the depth component is <= kMinDepth; callers
/// inside the residual loop exclude such pixels instead of catching.
Vec2 project(const PinholeIntrinsics& intr, const Vec4& X);

/// Same projection, returning false instead of throwing for behind-camera
/// points (the hot path in residual evaluation).
bool project_checked(const PinholeIntrinsics& intr, const Vec3& X, Vec2& px);

/// Back-projects pixel (u, v) at depth d into a homogeneous 3D point. The
/// depth is used as-is; with normalized depth maps the result is in
/// normalized scene units.
Vec4 backproject(const PinholeIntrinsics& intr, double depth, double u,
                 double v);

/// Raster-level back-projection. Throws InvalidArgumentError for
/// out-of-bounds or invalid pixels.
Vec4 backproject(const PinholeIntrinsics& intr, const fields::DepthMap& depth,
                 const Eigen::Vector2i& px);

/// Divides a raw depth raster (scene units) by d_max. Values outside
/// (0, d_max] are marked invalid rather than clamped, so they drop out of
/// the valid pixel set downstream.
fields::DepthMap normalize_depth(const StereoRig& rig,
                                 const fields::Grid<double>& depth_raw);

/// depth = fx * baseline / disparity, in scene units. Returns a quiet-NaN
/// "invalid" marker (never infinity) when disparity <= kMinDisparity.
double disparity_to_depth(const StereoRig& rig, double disparity);

/// Inverse of disparity_to_depth for depths in (0, d_max].
double depth_to_disparity(const StereoRig& rig, double depth);

/// True when the value is a valid depth (not the invalid marker).
inline bool depth_valid(double d) { return std::isfinite(d) && d > 0; }

/// Invalid-depth marker used by disparity_to_depth and normalize_depth.
inline double invalid_depth() {
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace gvo::cam

#endif
