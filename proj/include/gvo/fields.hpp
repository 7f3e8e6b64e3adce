// Field operations on rasters: bilinear sampling with validity propagation,
// flow-target warping into the previous frame and the mask pipeline that
// defines the valid pixel set Omega.
#ifndef GVO_FIELDS_HPP
#define GVO_FIELDS_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gvo/camera.hpp"
#include "gvo/rasters.hpp"

namespace gvo::fields {

/// Everything one pose solve consumes: the two frames' rasters, the
/// exclusion mask (union of instrument, specularity and invalid-depth
/// pixels of both frames) and the rig.
struct FramePair {
    DepthMap depth_t;
    DepthMap depth_prev;
    FlowField flow;           // t -> t-1
    ParallaxFlow parallax_t;      // optional, may be empty
    ParallaxFlow parallax_prev;   // optional
    ImageRgb image_t;             // optional
    ImageRgb image_prev;          // optional
    PixelMask mask;
    cam::StereoRig rig;

    int width() const { return depth_t.value.width(); }
    int height() const { return depth_t.value.height(); }
    void validate() const;
};

/// Bilinear sample of a scalar grid at a continuous position. Returns
/// nullopt when the position leaves [0, w-1] x [0, h-1] or any neighbor
/// with nonzero interpolation weight is invalid. `valid` may be null
/// (all pixels valid). Exact on lattice points and for constant rasters.
std::optional<double> bilinear_sample(const Grid<double>& grid,
                                      const Grid<uint8_t>* valid,
                                      const Eigen::Vector2d& pos);

/// Samples depth_prev at x + flow(x) and back-projects with the rig
/// intrinsics. Returns nullopt when the flow target leaves the image or
/// touches invalid depth.
std::optional<cam::Vec4> warp_backproject(const FramePair& pair,
                                          const Eigen::Vector2i& px);

/// Marks pixels whose maximum channel intensity is >= threshold_frac, then
/// dilates with a square structuring element of radius dilate_px.
PixelMask specularity_mask(const ImageRgb& image, double threshold_frac = 0.98,
                           int dilate_px = 2);

/// Union of two masks (pixel excluded if excluded in either).
PixelMask mask_union(const PixelMask& a, const PixelMask& b);

/// Row-major list of valid pixels: not masked, valid depth at x, valid warp
/// target and in front of the camera at the identity pose. Throws
/// DegenerateFrameError when empty.
std::vector<Eigen::Vector2i> build_omega(const FramePair& pair);

}  // namespace gvo::fields

#endif
