#pragma once

#include <functional>

namespace exkit {

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (61 points) on a finite interval.
/// Throws QuadratureFailure on non-finite results or integrator errors.
double integrate(const RealFunction& f, double a, double b, double rel_tol = 1e-10);

/// Integral over [a, inf) with the exp-sinh substitution.
double integrate_to_infinity(const RealFunction& f, double a, double rel_tol = 1e-10);

} // namespace exkit
