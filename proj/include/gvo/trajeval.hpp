// Trajectory container and error metrics: ATE-RMSE with closed-form rigid
// alignment, and relative pose errors over a fixed frame interval.
#ifndef GVO_TRAJEVAL_HPP
#define GVO_TRAJEVAL_HPP

#include <vector>

#include "gvo/lie.hpp"

namespace gvo::traj {

using lie::RigidTransform;

/// Timestamped absolute poses (world-from-camera). Stamps must be strictly
/// increasing and match element count.
struct Trajectory {
    std::vector<double> stamps;
    std::vector<RigidTransform> poses;

    size_t size() const { return poses.size(); }
    void validate() const;
};

/// Closed-form least-squares rigid transform aligning the translation
/// components of `est` onto `gt` (cross-covariance SVD, no scale).
RigidTransform align_translations(const Trajectory& est, const Trajectory& gt);

/// Root-mean-square translational error after optional SE(3) alignment.
/// Requires equal length and exactly matching stamps.
double ate_rmse(const Trajectory& est, const Trajectory& gt,
                bool align = true);

struct RpeSeries {
    std::vector<double> trans;    // scene units
    std::vector<double> rot_deg;  // degrees
};

/// Relative pose error over an interval of `delta` frames:
/// E = (gt_t^-1 gt_{t+d})^-1 (est_t^-1 est_{t+d}) per index.
RpeSeries rpe(const Trajectory& est, const Trajectory& gt, int delta = 1);

struct SeriesStats {
    double mean = 0.0;
    double stddev = 0.0;
    size_t count = 0;
};
SeriesStats series_stats(const std::vector<double>& xs);

/// Micro aggregation: statistics over all samples pooled across sequences.
SeriesStats pooled_stats(const std::vector<std::vector<double>>& series);
/// Macro aggregation: statistics over per-sequence means.
SeriesStats macro_stats(const std::vector<std::vector<double>>& series);

/// Tangent-space relative poses between consecutive trajectory entries
/// (inverse of chaining; entry t holds the pose from t+1 to t).
std::vector<lie::TangentPose> relative_poses(const Trajectory& traj);

}  // namespace gvo::traj

#endif
