#include "wsncov/numerics.hpp"

#include "wsncov/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace wsncov {

namespace {

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// Acklam's rational approximation to the lower-tail normal quantile
// (relative error ~1.15e-9); refined by Newton steps afterwards.
double acklam_quantile(double p) {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// 15-point Kronrod nodes (non-negative half) and weights, with the embedded
// 7-point Gauss weights at the odd Kronrod nodes.
constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    double abs_value;

    bool operator<(const Segment& other) const { return error < other.error; }
};

double checked_eval(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw DomainError("integrand is not finite at x = " + std::to_string(x));
    }
    return y;
}

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = checked_eval(f, center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double abs_sum = std::abs(fc) * kKronrodWeights[7];

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double f1 = checked_eval(f, center - dx);
        const double f2 = checked_eval(f, center + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * (f1 + f2);
        }
    }
    return Segment{a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace

double q_function(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("q_function: argument must be finite");
    }
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("q_inverse: probability must lie in (0, 1)");
    }
    // 1 - p is exact for p in [0.5, 1), which makes the antisymmetry exact.
    if (p > 0.5) {
        return -q_inverse(1.0 - p);
    }
    if (p == 0.5) {
        return 0.0;
    }
    double x = -acklam_quantile(p);
    for (int i = 0; i < 4; ++i) {
        const double density = normal_pdf(x);
        if (density == 0.0) {
            break;
        }
        const double step = (q_function(x) - p) / density;
        x += step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) {
            break;
        }
    }
    return x;
}

QuadratureResult integrate_with_error(const std::function<double(double)>& f,
                                      const QuadratureSpec& spec) {
    if (!(spec.lower < spec.upper) || !std::isfinite(spec.lower) || !std::isfinite(spec.upper)) {
        throw DomainError("integrate: require finite lower < upper");
    }
    if (!(spec.relative_tolerance > 0.0)) {
        throw DomainError("integrate: relative_tolerance must be positive");
    }
    if (spec.max_subdivisions < 1) {
        throw DomainError("integrate: max_subdivisions must be at least 1");
    }

    std::priority_queue<Segment> segments;
    Segment first = gauss_kronrod(f, spec.lower, spec.upper);
    double total = first.value;
    double total_error = first.error;
    double total_abs = first.abs_value;
    segments.push(first);

    auto converged = [&] {
        const double floor = 50.0 * std::numeric_limits<double>::epsilon() * total_abs;
        return total_error <= std::max(spec.relative_tolerance * std::abs(total), floor);
    };

    int count = 1;
    while (!converged()) {
        if (count >= spec.max_subdivisions) {
            throw ConvergenceError("integrate: no convergence within " +
                                       std::to_string(spec.max_subdivisions) + " subdivisions",
                                   total, total_error);
        }
        const Segment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        total_abs += left.abs_value + right.abs_value - worst.abs_value;
        segments.push(left);
        segments.push(right);
        ++count;
    }

    // Re-sum from the pieces so the running updates do not accumulate rounding.
    double value = 0.0;
    double error = 0.0;
    while (!segments.empty()) {
        value += segments.top().value;
        error += segments.top().error;
        segments.pop();
    }
    return QuadratureResult{value, error, count};
}

double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    return integrate_with_error(f, spec).value;
}

}  // namespace wsncov
