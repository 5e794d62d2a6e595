#pragma once

#include "expspline/frequency.hpp"
#include "expspline/quadrature.hpp"

namespace expspline {

// integral_0^h Phi(t-h) Phi(t) e^{pt} dt = -Phi_{(p+l0, p+l1, -l0, -l1)}(h),
// with Phi = Phi_{(l0, l1)}.
double weighted_cross_integral(double l0, double l1, double p, double h);

struct SquareIntegrals {
    double left;       // integral_0^h Phi(t)^2 e^{pt} dt
    double right;      // integral_0^h Phi(t-h)^2 e^{pt} dt
    double lin_left;   // integral_0^h Phi(t) e^{pt} dt
    double lin_right;  // integral_0^h Phi(t-h) e^{pt} dt
};

SquareIntegrals weighted_square_integrals(double l0, double l1, double p, double h);

struct ConvolutionCheck {
    double lhs;  // quadrature of integral_0^y Phi_A(t) Phi_B(y-t) dt
    double rhs;  // Phi_{A u B}(y)
    double quadrature_error;
};

ConvolutionCheck convolution_check(const FrequencyVector& a, const FrequencyVector& b, double y,
                                   const QuadratureRule& rule = {});

}  // namespace expspline
