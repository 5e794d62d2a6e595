#pragma once

#include <span>

#include "expspline/hatbasis.hpp"
#include "expspline/quadrature.hpp"

namespace expspline {

// Omega: the element of E(l0, l1, 0) with Omega(a) = Omega(b) = 0 and
// (D - l0)(D - l1) Omega = -1. Evaluated from the integrated Green function,
//   Omega(t) = [Phi_{-L}(b-t) Phi_{(-L,0)}(t-a)
//               + e^{-(l0+l1)(b-t)} Phi_{-L}(t-a) Phi_{(L,0)}(b-t)] / Phi_{-L}(b-a),
// a sum of positive terms valid for every real pair, zero frequencies included.
double omega_eval(double l0, double l1, double a, double b, double t);

// Dirichlet Green function of (D - l0)(D - l1) on [a, b]; nonpositive.
double green_eval(double l0, double l1, double a, double b, double t, double s);
double green_diagonal(double l0, double l1, double a, double b, double t);

// -integral_a^b G(t, s) ds by quadrature.
double omega_via_green(double l0, double l1, double a, double b, double t, const QuadratureRule& rule = {});

// (sinh x - 2 sinh(x/2)) / (x^2 sinh x), evaluated as
// expm1(-|x|/2)^2 / (x^2 (1 + e^{-|x|})); 1/8 at x = 0.
double mstar(double x);

struct IntervalBoundData {
    double a;
    double b;
    double l0;
    double l1;
    double M;
    double t_max;
};

// max Omega on [a, b] by a 512-point scan refined by golden-section search.
IntervalBoundData maximize_omega(double l0, double l1, double a, double b);

// M = max Omega. Symmetric pairs use (b-a)^2 M*(xi (b-a)); other pairs are
// maximized numerically and cached per (l0 (b-a), l1 (b-a)).
IntervalBoundData M_constant(double l0, double l1, double a, double b);

// max_j M_j * max_j maxLf[j].
double interp2_error_bound(const HatBasis& basis, std::span<const double> maxLf);

}  // namespace expspline
