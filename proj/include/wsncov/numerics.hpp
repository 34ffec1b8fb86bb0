#pragma once

#include <cstdint>
#include <functional>

namespace wsncov {

/// Standard normal tail probability Q(x) = P(Z > x), via erfc.
/// Throws DomainError for non-finite x.
double q_function(double x);

/// Inverse of q_function on (0, 1).
double q_inverse(double p);

/// Integration interval and stopping rule for `integrate`. `upper` may be a
/// truncation of an infinite limit; the truncation is the caller's decision.
struct QuadratureSpec {
    double lower = 0.0;
    double upper = 1.0;
    double relative_tolerance = 1e-9;
    int max_subdivisions = 2000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature. Bisects the interval
/// with the largest error estimate until the summed error estimate is within
/// relative_tolerance of the result. Throws ConvergenceError (carrying the best
/// estimate) when max_subdivisions is exhausted first.
double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec);

/// Same as integrate() but also reports the final error estimate.
struct QuadratureResult {
    double value;
    double error;
    int subdivisions;
};
QuadratureResult integrate_with_error(const std::function<double(double)>& f,
                                      const QuadratureSpec& spec);

}  // namespace wsncov
