// Independent numeric oracle: fixed-step RK4 integration of the original
// equation x'' + f(x) x'^2 + g(x) = 0, plus trajectory-level certificates.
//
// The integrator never adapts its step (so its convergence order is testable
// directly); a step-doubling error estimate acts purely as a truncation
// guard.  A run that leaves the trustworthy regime is cut short and labeled
// with the reason rather than silently degraded.
#pragma once

#include "lienard/transform.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lienard {

struct OracleConfig {
    double t_end = 5.0;
    double h = 1e-3;
    double error_budget = 1e-13;  // per-step step-doubling estimate cap
    double magnitude_cap = 1e8;   // |x| or |x'| beyond this truncates
    double pole_guard = 0.1;      // min |denominator| the right side may see
};

struct Trajectory {
    std::vector<double> t, x, v;  // v = x'
    bool truncated = false;
    // "error-budget" | "pole-guard" | "magnitude" | "nonfinite" | "domain-error"
    std::string reason;
};

// Integrates from x(0) = x0, x'(0) = v0 up to t_end (final partial step lands
// exactly on t_end).  The recorded points always satisfy every guard.
Trajectory integrate_lienard(const Expr& f, const Expr& g, double x0, double v0,
                             const OracleConfig& cfg);

// Same stepper for the canonical equation y'' + F(y) = 0 with an evaluable
// force (useful when F is only known through the chart, or directly when
// f = 0).  F returning non-finite values truncates the run.
Trajectory integrate_canonical(const std::function<double(double)>& F, double y0,
                               double v0, const OracleConfig& cfg);

// The same trajectory pushed through the canonical chart: y = phi(x),
// y' = M(x) x', and the canonical force G(x) = F(y) along it.
struct MappedTrajectory {
    std::vector<double> t, x, y, yd, G;
};

MappedTrajectory map_trajectory(const Trajectory& traj, const TransformData& T);

// max |d(y')/dt + F(y)| via central differences at interior samples with
// uniform spacing (the final partial step's neighbors are skipped).
// Returns -1 when fewer than 3 usable points exist.
double transformation_residual(const MappedTrajectory& m);

// Potential W(x) with dW/dx = M G, so E = y'^2/2 + W(x) is conserved along
// exact solutions.  Closed form when the rule base integrates M G, otherwise
// quadrature anchored at domain.lo (the constant cancels in drift).
std::function<double(double)> build_potential(const TransformData& T);

// max_i |E_i - E_0| / (1 + |E_0|) along the mapped trajectory.
// Returns -1 when the trajectory has no points or W fails to evaluate.
double energy_drift(const MappedTrajectory& m, const std::function<double(double)>& W);

}  // namespace lienard
