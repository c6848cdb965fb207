#include "exkit/quadrature.hpp"

#include "exkit/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace exkit {

double integrate(const RealFunction& f, double a, double b, double rel_tol)
{
    if (a == b) return 0.0;
    double result = 0.0;
    try {
        double error = 0.0;
        result = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol, &error);
    } catch (const std::exception& e) {
        fail(ErrorCode::QuadratureFailure, e.what());
    }
    if (!std::isfinite(result)) fail(ErrorCode::QuadratureFailure, "integral is not finite");
    return result;
}

double integrate_to_infinity(const RealFunction& f, double a, double rel_tol)
{
    double result = 0.0;
    try {
        boost::math::quadrature::exp_sinh<double> integrator;
        double error = 0.0;
        result = integrator.integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol, &error);
    } catch (const std::exception& e) {
        fail(ErrorCode::QuadratureFailure, e.what());
    }
    if (!std::isfinite(result)) fail(ErrorCode::QuadratureFailure, "improper integral is not finite");
    return result;
}

} // namespace exkit
