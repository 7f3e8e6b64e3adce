// L-BFGS pose solver with strong-Wolfe line search, plus trajectory
// chaining. The optimizer treats the tangent pose as a plain vector in R^6;
// the generic core is exposed so tests can run it on analytic functions.
#ifndef GVO_SOLVER_HPP
#define GVO_SOLVER_HPP

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "gvo/lie.hpp"
#include "gvo/residuals.hpp"
#include "gvo/trajeval.hpp"

namespace gvo::solver {

using lie::TangentPose;
using lie::Vec6;

struct SolverConfig {
    int memory = 10;        // L-BFGS history length
    int max_iters = 100;
    double grad_tol = 1e-8;
    double step_tol = 1e-10;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    enum class InitPolicy { identity, previous_pose };
    InitPolicy init_policy = InitPolicy::identity;
    bool record_trace = false;  // per-iteration objective values

    void validate() const {
        if (memory < 1) throw InvalidArgumentError("SolverConfig: memory < 1");
        if (max_iters < 0)
            throw InvalidArgumentError("SolverConfig: max_iters < 0");
        if (!(grad_tol > 0) || !(step_tol > 0))
            throw InvalidArgumentError("SolverConfig: tolerances must be > 0");
        if (!(0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1))
            throw InvalidArgumentError(
                "SolverConfig: require 0 < c1 < c2 < 1");
    }
};

struct SolveReport {
    TangentPose pose;
    int iterations = 0;
    double final_objective = 0.0;
    double final_grad_norm = 0.0;
    bool converged = false;
    int behind_camera_count = 0;
    // Objective identically zero with zero gradient at the initial point
    // (e.g. all-zero weight maps): the solve reports convergence at the
    // initial pose and sets this flag.
    bool degenerate = false;
    std::vector<double> trace;  // filled when record_trace is set
};

/// Objective callback: fills `grad` and returns the function value.
using ObjectiveFn =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct LbfgsResult {
    Eigen::VectorXd x;
    double f = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    bool degenerate = false;
    std::vector<double> trace;
};

/// Generic L-BFGS minimization with a strong-Wolfe line search (two-loop
/// recursion, initial scaling s.y/y.y, bisection-based zoom capped at 20
/// steps). Deterministic: identical inputs give bitwise-identical results.
LbfgsResult lbfgs_minimize(const ObjectiveFn& fn, const Eigen::VectorXd& x0,
                           const SolverConfig& cfg);

/// Minimizes the workspace objective starting from `init`. Requires
/// |Omega| >= 6. Non-converged solves still return the best iterate with
/// converged = false.
SolveReport solve_pose(const res::ResidualWorkspace& ws,
                       const SolverConfig& cfg, const TangentPose& init);

/// Chains relative poses (each mapping frame t to frame t-1) into an
/// absolute trajectory starting at the identity. stamps.size() must equal
/// poses.size() + 1.
traj::Trajectory chain_trajectory(const std::vector<TangentPose>& poses,
                                  const std::vector<double>& stamps);

}  // namespace gvo::solver

#endif
