#include "gvo/trajeval.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace gvo::traj {

void Trajectory::validate() const {
    if (stamps.size() != poses.size()) {
        throw InvalidArgumentError("Trajectory: stamp/pose count mismatch");
    }
    for (size_t i = 1; i < stamps.size(); ++i) {
        if (!(stamps[i] > stamps[i - 1])) {
            throw InvalidArgumentError(
                "Trajectory: stamps must be strictly increasing");
        }
    }
}

namespace {

void check_comparable(const Trajectory& est, const Trajectory& gt) {
    est.validate();
    gt.validate();
    if (est.size() != gt.size()) {
        throw InvalidArgumentError("trajectory length mismatch");
    }
    if (est.size() == 0) {
        throw InvalidArgumentError("empty trajectory");
    }
    for (size_t i = 0; i < est.size(); ++i) {
        if (est.stamps[i] != gt.stamps[i]) {
            throw InvalidArgumentError(
                "trajectory stamps do not match (no interpolation)");
        }
    }
}

}  // namespace

RigidTransform align_translations(const Trajectory& est,
                                  const Trajectory& gt) {
    check_comparable(est, gt);
    const size_t n = est.size();

    lie::Vec3 c_est = lie::Vec3::Zero(), c_gt = lie::Vec3::Zero();
    for (size_t i = 0; i < n; ++i) {
        c_est += est.poses[i].t;
        c_gt += gt.poses[i].t;
    }
    c_est /= static_cast<double>(n);
    c_gt /= static_cast<double>(n);

    lie::Mat3 cov = lie::Mat3::Zero();
    for (size_t i = 0; i < n; ++i) {
        cov += (gt.poses[i].t - c_gt) * (est.poses[i].t - c_est).transpose();
    }

    Eigen::JacobiSVD<lie::Mat3> svd(cov,
                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
    lie::Mat3 S = lie::Mat3::Identity();
    if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) {
        S(2, 2) = -1.0;
    }
    RigidTransform T;
    T.R = svd.matrixU() * S * svd.matrixV().transpose();
    T.t = c_gt - T.R * c_est;
    return T;
}

double ate_rmse(const Trajectory& est, const Trajectory& gt, bool align) {
    check_comparable(est, gt);
    const RigidTransform T =
        align ? align_translations(est, gt) : RigidTransform::identity();
    double sum_sq = 0.0;
    for (size_t i = 0; i < est.size(); ++i) {
        sum_sq += (gt.poses[i].t - lie::apply(T, est.poses[i].t)).squaredNorm();
    }
    return std::sqrt(sum_sq / static_cast<double>(est.size()));
}

RpeSeries rpe(const Trajectory& est, const Trajectory& gt, int delta) {
    check_comparable(est, gt);
    if (delta < 1) {
        throw InvalidArgumentError("rpe: delta must be >= 1");
    }
    RpeSeries out;
    if (est.size() <= static_cast<size_t>(delta)) return out;
    for (size_t t = 0; t + delta < est.size(); ++t) {
        const RigidTransform rel_gt =
            lie::compose(lie::inverse(gt.poses[t]), gt.poses[t + delta]);
        const RigidTransform rel_est =
            lie::compose(lie::inverse(est.poses[t]), est.poses[t + delta]);
        const RigidTransform err =
            lie::compose(lie::inverse(rel_gt), rel_est);
        out.trans.push_back(err.t.norm());
        const double cos_angle =
            std::clamp(0.5 * (err.R.trace() - 1.0), -1.0, 1.0);
        out.rot_deg.push_back(std::acos(cos_angle) * 180.0 / M_PI);
    }
    return out;
}

SeriesStats series_stats(const std::vector<double>& xs) {
    SeriesStats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / static_cast<double>(xs.size()));
    return s;
}

SeriesStats pooled_stats(const std::vector<std::vector<double>>& series) {
    std::vector<double> all;
    for (const auto& s : series) all.insert(all.end(), s.begin(), s.end());
    return series_stats(all);
}

SeriesStats macro_stats(const std::vector<std::vector<double>>& series) {
    std::vector<double> means;
    for (const auto& s : series) {
        if (!s.empty()) means.push_back(series_stats(s).mean);
    }
    return series_stats(means);
}

std::vector<lie::TangentPose> relative_poses(const Trajectory& traj) {
    traj.validate();
    std::vector<lie::TangentPose> rel;
    for (size_t t = 1; t < traj.size(); ++t) {
        rel.push_back(lie::log_map(
            lie::compose(lie::inverse(traj.poses[t - 1]), traj.poses[t])));
    }
    return rel;
}

}  // namespace gvo::traj
