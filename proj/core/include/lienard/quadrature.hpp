// Adaptive Simpson quadrature and a memoizing antiderivative-by-quadrature,
// used whenever the symbolic antiderivative rule base declines an integrand.
#pragma once

#include "lienard/errors.hpp"

#include <functional>
#include <map>

namespace lienard {

// Integral of fn over [a, b] to the requested relative tolerance.  Throws
// QuadratureFailure when the recursion depth limit is reached without
// convergence.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 double rel_tol = 1e-10);

// H(x) = integral of fn from x0 to x, evaluated by quadrature from the
// nearest previously computed anchor so repeated nearby calls stay cheap.
// Instances are not safe for concurrent use; give each worker its own copy.
class NumericAntiderivative {
  public:
    NumericAntiderivative(std::function<double(double)> fn, double x0, double rel_tol = 1e-10)
        : fn_(std::move(fn)), rel_tol_(rel_tol) {
        anchors_[x0] = 0.0;
    }

    double operator()(double x) const;

  private:
    std::function<double(double)> fn_;
    double rel_tol_;
    mutable std::map<double, double> anchors_;  // x -> H(x)
};

}  // namespace lienard
