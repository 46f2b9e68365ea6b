#include "lienard/quadrature.hpp"

#include <cmath>

namespace lienard {

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4 * fm + fb); }

double adaptive(const std::function<double(double)>& fn, double a, double b, double fa, double fm,
                double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol || std::abs(b - a) < 1e-14 * (1 + std::abs(a))) {
        return left + right + diff / 15.0;
    }
    if (depth <= 0) throw QuadratureFailure("adaptive quadrature did not converge");
    return adaptive(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& fn, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double fa = fn(a);
    const double fb = fn(b);
    const double fm = fn(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    // The tolerance scales with a first coarse magnitude estimate so the
    // relative target is meaningful for both tiny and large integrals.
    const double scale = std::max({std::abs(whole), std::abs(b - a), 1.0});
    return adaptive(fn, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

double NumericAntiderivative::operator()(double x) const {
    auto it = anchors_.lower_bound(x);
    // pick the nearest anchor among it and its predecessor
    if (it == anchors_.end() || (it != anchors_.begin() &&
                                 x - std::prev(it)->first < it->first - x)) {
        --it;
    }
    if (it->first == x) return it->second;
    const double value = it->second + integrate(fn_, it->first, x, rel_tol_);
    anchors_[x] = value;
    return value;
}

}  // namespace lienard
