#include "lienard/oracle.hpp"

#include "lienard/calculus.hpp"
#include "lienard/quadrature.hpp"

#include <cmath>

namespace lienard {

namespace {

struct StepFail {
    const char* reason;
};

struct State {
    double x, v;
};

class Rhs {
  public:
    Rhs(const Expr& f, const Expr& g, const OracleConfig& cfg) : f_(f), g_(g), cfg_(cfg) {}

    // x'' = -f(x) v^2 - g(x); throws StepFail outside the trustworthy regime.
    double operator()(double x, double v) const {
        EvalDetail df, dg;
        try {
            df = eval_detailed(f_, {{"x", x}});
            dg = eval_detailed(g_, {{"x", x}});
        } catch (const DomainError&) {
            throw StepFail{"domain-error"};
        }
        if (df.min_den_mag < cfg_.pole_guard || dg.min_den_mag < cfg_.pole_guard)
            throw StepFail{"pole-guard"};
        const double a = -(df.value * v * v) - dg.value;
        if (!std::isfinite(a)) throw StepFail{"nonfinite"};
        return a;
    }

  private:
    const Expr& f_;
    const Expr& g_;
    const OracleConfig& cfg_;
};

template <class Accel>
State rk4_step(const Accel& rhs, State s, double h) {
    const double k1x = s.v, k1v = rhs(s.x, s.v);
    const double k2x = s.v + 0.5 * h * k1v, k2v = rhs(s.x + 0.5 * h * k1x, k2x);
    const double k3x = s.v + 0.5 * h * k2v, k3v = rhs(s.x + 0.5 * h * k2x, k3x);
    const double k4x = s.v + h * k3v, k4v = rhs(s.x + h * k3x, k4x);
    return State{s.x + h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x),
                 s.v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)};
}

template <class Accel>
Trajectory run_integration(const Accel& rhs, double x0, double v0, const OracleConfig& cfg) {
    Trajectory out;
    State s{x0, v0};
    double t = 0;
    out.t.push_back(t);
    out.x.push_back(s.x);
    out.v.push_back(s.v);
    while (t < cfg.t_end - 1e-12) {
        const double h = std::min(cfg.h, cfg.t_end - t);
        State full, fine;
        try {
            full = rk4_step(rhs, s, h);
            const State mid = rk4_step(rhs, s, h / 2);
            fine = rk4_step(rhs, mid, h / 2);
        } catch (const StepFail& fail) {
            out.truncated = true;
            out.reason = fail.reason;
            return out;
        }
        if (!std::isfinite(full.x) || !std::isfinite(full.v) || !std::isfinite(fine.x) ||
            !std::isfinite(fine.v)) {
            out.truncated = true;
            out.reason = "nonfinite";
            return out;
        }
        const double est = std::max(std::abs(full.x - fine.x), std::abs(full.v - fine.v));
        if (est > cfg.error_budget) {
            out.truncated = true;
            out.reason = "error-budget";
            return out;
        }
        if (std::abs(full.x) > cfg.magnitude_cap || std::abs(full.v) > cfg.magnitude_cap) {
            out.truncated = true;
            out.reason = "magnitude";
            return out;
        }
        s = full;
        t += h;
        out.t.push_back(t);
        out.x.push_back(s.x);
        out.v.push_back(s.v);
    }
    return out;
}

}  // namespace

Trajectory integrate_lienard(const Expr& f, const Expr& g, double x0, double v0,
                             const OracleConfig& cfg) {
    return run_integration(Rhs(f, g, cfg), x0, v0, cfg);
}

Trajectory integrate_canonical(const std::function<double(double)>& F, double y0, double v0,
                               const OracleConfig& cfg) {
    auto rhs = [&F](double y, double) {
        double a;
        try {
            a = -F(y);
        } catch (const Error&) {
            throw StepFail{"domain-error"};
        }
        if (!std::isfinite(a)) throw StepFail{"nonfinite"};
        return a;
    };
    return run_integration(rhs, y0, v0, cfg);
}

MappedTrajectory map_trajectory(const Trajectory& traj, const TransformData& T) {
    MappedTrajectory m;
    for (size_t i = 0; i < traj.t.size(); ++i) {
        double y, mm, gg;
        try {
            y = T.phi_eval(traj.x[i]);
            mm = T.M_eval(traj.x[i]);
            gg = T.G_eval(traj.x[i]);
        } catch (const Error&) {
            break;
        }
        if (!std::isfinite(y) || !std::isfinite(mm) || !std::isfinite(gg)) break;
        m.t.push_back(traj.t[i]);
        m.x.push_back(traj.x[i]);
        m.y.push_back(y);
        m.yd.push_back(mm * traj.v[i]);
        m.G.push_back(gg);
    }
    return m;
}

double transformation_residual(const MappedTrajectory& m) {
    const size_t n = m.t.size();
    if (n < 3) return -1;
    double worst = -1;
    for (size_t i = 1; i + 1 < n; ++i) {
        const double h1 = m.t[i] - m.t[i - 1];
        const double h2 = m.t[i + 1] - m.t[i];
        if (std::abs(h1 - h2) > 1e-12 * std::max(h1, h2)) continue;  // partial final step
        const double r = std::abs((m.yd[i + 1] - m.yd[i - 1]) / (h1 + h2) + m.G[i]);
        worst = std::max(worst, r);
    }
    return worst;
}

std::function<double(double)> build_potential(const TransformData& T) {
    if (T.symbolic) {
        if (auto W = antiderivative(normalize(mul(*T.M, *T.G)), "x")) {
            Expr w = *W;
            return [w](double x) { return eval(w, {{"x", x}}); };
        }
    }
    const auto G = T.G_eval;
    const auto M = T.M_eval;
    NumericAntiderivative W([G, M](double x) { return M(x) * G(x); }, T.domain.lo);
    return [W](double x) { return W(x); };
}

double energy_drift(const MappedTrajectory& m, const std::function<double(double)>& W) {
    if (m.t.empty()) return -1;
    double e0 = 0, worst = -1;
    for (size_t i = 0; i < m.t.size(); ++i) {
        double w;
        try {
            w = W(m.x[i]);
        } catch (const Error&) {
            return worst;
        }
        if (!std::isfinite(w)) return worst;
        const double e = 0.5 * m.yd[i] * m.yd[i] + w;
        if (i == 0) {
            e0 = e;
            worst = 0;
        } else {
            worst = std::max(worst, std::abs(e - e0) / (1 + std::abs(e0)));
        }
    }
    return worst;
}

}  // namespace lienard
