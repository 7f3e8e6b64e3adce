#include "gvo/solver.hpp"

#include <cmath>
#include <deque>
#include <optional>

namespace gvo::solver {

namespace {

struct LinePoint {
    double alpha = 0.0;
    double f = 0.0;
    Eigen::VectorXd g;
    double dphi = 0.0;  // g . d
};

struct LineSearchScratch {
    const ObjectiveFn& fn;
    const Eigen::VectorXd& x;
    const Eigen::VectorXd& d;
    Eigen::VectorXd x_trial;
    Eigen::VectorXd g_trial;

    LinePoint eval(double alpha) {
        x_trial = x + alpha * d;
        LinePoint p;
        p.alpha = alpha;
        p.f = fn(x_trial, g_trial);
        p.g = g_trial;
        p.dphi = g_trial.dot(d);
        return p;
    }
};

constexpr int kMaxZoomBisections = 20;
constexpr int kMaxBracketSteps = 30;

// Strong-Wolfe line search (bracket + bisection zoom). Returns nullopt when
// no acceptable step is found within the bisection budget.
std::optional<LinePoint> wolfe_line_search(LineSearchScratch& scratch,
                                           double f0, double dphi0,
                                           double alpha_init,
                                           const SolverConfig& cfg) {
    const double c1 = cfg.wolfe_c1;
    const double c2 = cfg.wolfe_c2;
    auto armijo_ok = [&](const LinePoint& p) {
        return p.f <= f0 + c1 * p.alpha * dphi0;
    };
    auto curvature_ok = [&](const LinePoint& p) {
        return std::abs(p.dphi) <= -c2 * dphi0;
    };

    auto zoom = [&](LinePoint lo, LinePoint hi) -> std::optional<LinePoint> {
        for (int i = 0; i < kMaxZoomBisections; ++i) {
            LinePoint mid = scratch.eval(0.5 * (lo.alpha + hi.alpha));
            if (!armijo_ok(mid) || mid.f >= lo.f) {
                hi = mid;
                continue;
            }
            if (curvature_ok(mid)) return mid;
            if (mid.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
            lo = mid;
        }
        return std::nullopt;
    };

    LinePoint prev;
    prev.alpha = 0.0;
    prev.f = f0;
    prev.dphi = dphi0;

    double alpha = alpha_init;
    for (int i = 0; i < kMaxBracketSteps; ++i) {
        LinePoint cur = scratch.eval(alpha);
        if (!armijo_ok(cur) || (i > 0 && cur.f >= prev.f)) {
            return zoom(prev, cur);
        }
        if (curvature_ok(cur)) return cur;
        if (cur.dphi >= 0.0) {
            return zoom(cur, prev);
        }
        prev = cur;
        alpha *= 2.0;
    }
    return std::nullopt;
}

struct Correction {
    Eigen::VectorXd s, y;
    double rho = 0.0;
};

}  // namespace

LbfgsResult lbfgs_minimize(const ObjectiveFn& fn, const Eigen::VectorXd& x0,
                           const SolverConfig& cfg) {
    cfg.validate();
    if (!x0.allFinite()) {
        throw InvalidArgumentError("lbfgs_minimize: non-finite start point");
    }

    LbfgsResult result;
    Eigen::VectorXd x = x0;
    Eigen::VectorXd g(x.size());
    double f = fn(x, g);
    double g_norm = g.norm();

    result.x = x;
    result.f = f;
    result.grad_norm = g_norm;
    if (cfg.record_trace) result.trace.push_back(f);

    Eigen::VectorXd best_x = x;
    double best_f = f;
    double best_g_norm = g_norm;

    if (g_norm <= cfg.grad_tol) {
        result.converged = true;
        result.degenerate = (f == 0.0 && g_norm == 0.0);
        return result;
    }

    std::deque<Correction> history;
    Eigen::VectorXd d(x.size());

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        // Two-loop recursion for d = -H g.
        d = -g;
        std::vector<double> alpha_coef(history.size());
        for (size_t i = history.size(); i-- > 0;) {
            const Correction& c = history[i];
            alpha_coef[i] = c.rho * c.s.dot(d);
            d -= alpha_coef[i] * c.y;
        }
        if (!history.empty()) {
            const Correction& last = history.back();
            const double gamma = last.s.dot(last.y) / last.y.dot(last.y);
            d *= gamma;
        }
        for (size_t i = 0; i < history.size(); ++i) {
            const Correction& c = history[i];
            const double beta = c.rho * c.y.dot(d);
            d += (alpha_coef[i] - beta) * c.s;
        }

        double dphi0 = g.dot(d);
        if (dphi0 >= 0.0) {
            // Curvature went bad; fall back to steepest descent.
            d = -g;
            dphi0 = g.dot(d);
        }

        const double alpha_init =
            (iter == 1) ? std::min(1.0, 1.0 / std::max(g_norm, 1e-12)) : 1.0;

        LineSearchScratch ls{fn, x, d, Eigen::VectorXd(), Eigen::VectorXd()};
        auto accepted = wolfe_line_search(ls, f, dphi0, alpha_init, cfg);
        if (!accepted) {
            // Return the best iterate seen so far.
            result.x = best_x;
            result.f = best_f;
            result.grad_norm = best_g_norm;
            result.iterations = iter - 1;
            result.converged = false;
            return result;
        }

        const Eigen::VectorXd s = accepted->alpha * d;
        const Eigen::VectorXd y = accepted->g - g;

        x += s;
        f = accepted->f;
        g = accepted->g;
        g_norm = g.norm();
        result.iterations = iter;
        if (cfg.record_trace) result.trace.push_back(f);

        if (f < best_f) {
            best_f = f;
            best_x = x;
            best_g_norm = g_norm;
        }

        if (g_norm <= cfg.grad_tol ||
            s.lpNorm<Eigen::Infinity>() <= cfg.step_tol) {
            result.x = x;
            result.f = f;
            result.grad_norm = g_norm;
            result.converged = true;
            return result;
        }

        const double sy = s.dot(y);
        if (sy > 1e-10 * s.norm() * y.norm()) {
            history.push_back({s, y, 1.0 / sy});
            if (static_cast<int>(history.size()) > cfg.memory) {
                history.pop_front();
            }
        }
    }

    result.x = best_x;
    result.f = best_f;
    result.grad_norm = best_g_norm;
    result.converged = false;
    return result;
}

SolveReport solve_pose(const res::ResidualWorkspace& ws,
                       const SolverConfig& cfg, const TangentPose& init) {
    if (ws.size() < 6) {
        throw DegenerateFrameError(
            "solve_pose: fewer than 6 valid pixels (pose unobservable)");
    }
    if (!init.finite()) {
        throw InvalidArgumentError("solve_pose: non-finite initial pose");
    }

    const ObjectiveFn fn = [&ws](const Eigen::VectorXd& x,
                                 Eigen::VectorXd& grad) {
        Vec6 g6;
        const double f = res::objective_value_and_gradient(
            ws, TangentPose::from_vector(x), g6);
        grad = g6;
        return f;
    };

    const LbfgsResult r = lbfgs_minimize(fn, init.to_vector(), cfg);

    SolveReport report;
    report.pose = TangentPose::from_vector(r.x);
    report.iterations = r.iterations;
    report.final_objective = r.f;
    report.final_grad_norm = r.grad_norm;
    report.converged = r.converged;
    report.degenerate = r.degenerate;
    report.trace = r.trace;
    res::objective(ws, report.pose, &report.behind_camera_count);
    return report;
}

traj::Trajectory chain_trajectory(const std::vector<TangentPose>& poses,
                                  const std::vector<double>& stamps) {
    if (stamps.empty() || stamps.size() != poses.size() + 1) {
        throw InvalidArgumentError(
            "chain_trajectory: need stamps.size() == poses.size() + 1");
    }
    traj::Trajectory out;
    out.stamps = stamps;
    out.poses.resize(stamps.size());
    out.poses[0] = lie::RigidTransform::identity();
    for (size_t t = 0; t < poses.size(); ++t) {
        out.poses[t + 1] = lie::compose(out.poses[t], lie::exp_map(poses[t]));
    }
    out.validate();
    return out;
}

}  // namespace gvo::solver
