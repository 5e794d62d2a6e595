#include "expspline/identities.hpp"

#include <cmath>

#include "expspline/errors.hpp"
#include "expspline/fundamental.hpp"

namespace expspline {

double weighted_cross_integral(double l0, double l1, double p, double h) {
    return -fundamental_eval({p + l0, p + l1, -l0, -l1}, h);
}

SquareIntegrals weighted_square_integrals(double l0, double l1, double p, double h) {
    SquareIntegrals r{};
    Scaled left = fundamental_scaled({2 * l0, 2 * l1, l0 + l1, -p}, h);
    left.mantissa *= 2.0;
    left.log_scale += p * h;
    r.left = left.value();
    // The printed statement carries a minus sign; the integrand is a square,
    // and quadrature confirms the positive sign.
    r.right = 2.0 * fundamental_eval({-2 * l0, -2 * l1, -l0 - l1, p}, h);
    r.lin_left = fundamental_eval({p + l0, p + l1, 0.0}, h);
    r.lin_right = -fundamental_eval({-l0, -l1, p}, h);
    return r;
}

ConvolutionCheck convolution_check(const FrequencyVector& a, const FrequencyVector& b, double y,
                                   const QuadratureRule& rule) {
    if (!(y >= 0.0)) throw DomainError("convolution_check requires y >= 0");
    auto integrand = [&](double t) { return fundamental_eval(a, t) * fundamental_eval(b, y - t); };
    QuadratureResult q = integrate(integrand, 0.0, y, rule);
    return {q.value, fundamental_eval(a.joined(b), y), q.error};
}

}  // namespace expspline
