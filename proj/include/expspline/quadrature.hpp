#pragma once

#include <functional>
#include <span>

namespace expspline {

// Globally adaptive Gauss-Legendre quadrature on 15-point panels. A panel's
// error is estimated by comparing it against its two halves; the panel with
// the largest estimate is bisected until the total estimate meets
// max(abs_tol, rel_tol * |value|).
struct QuadratureRule {
    double abs_tol = 1e-11;
    double rel_tol = 1e-10;
    int max_subdivisions = 1 << 14;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

using Integrand = std::function<double(double)>;

// Breakpoints strictly inside (a, b) start as panel edges; use them where the
// integrand is only piecewise smooth. Throws QuadratureError when the
// subdivision budget runs out.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureRule& rule = {},
                           std::span<const double> breakpoints = {});

// Single 15-point Gauss-Legendre panel.
double gauss_legendre15(const Integrand& f, double a, double b);

}  // namespace expspline
