#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "expspline/hatbasis.hpp"
#include "expspline/quadrature.hpp"

namespace expspline {

// Tridiagonal s_ij = <H_i, H_j>_p, weight e^{pt}. sub[i] = s_{i-1,i} (sub[0] = 0),
// super[i] = s_{i,i+1} (super[n-1] = 0).
struct GramSystem {
    int n = 0;
    std::vector<double> diag;
    std::vector<double> sub;
    std::vector<double> super;
    std::vector<double> rhs;
    double p = 0.0;
};

using Function = std::function<double(double)>;

// <f, g>_p over [a, b].
QuadratureResult inner_product_p(const Function& f, const Function& g, double p, double a, double b,
                                 const QuadratureRule& rule = {}, std::span<const double> breakpoints = {});

// Entries from the closed forms of the weighted square and cross integrals.
GramSystem gram_assemble(const HatBasis& basis, double p);
// Same matrix by quadrature of the hat products (cross-check only).
GramSystem gram_assemble_quadrature(const HatBasis& basis, double p, const QuadratureRule& rule = {});
// beta_i = <H_i, g>_p by quadrature on each interval of the support.
std::vector<double> gram_rhs(const HatBasis& basis, const Function& g, double p, const QuadratureRule& rule = {});

// T^{(p)}(h) = Phi_{(l0,l1,-p-l0,-p-l1)}(h) / (2 Phi_{(l0-l1,l1-l0,0,-p-l0-l1)}(h)); 1/2 at h = 0.
double tfunc(double l0, double l1, double p, double h);
// S^{(p)}(h) = Phi_{(-l0,-l1)}(h) Phi_{(l0,l1,-p)}(h) / (2 Phi_{(l0-l1,l1-l0,0,-p-l0-l1)}(h)); 3/2 at h = 0.
double sfunc(double l0, double l1, double p, double h);

struct ABCD {
    double A;
    double B;
    double C;
    double D;
};

// The four Gram ratios of one interval of length h by direct quadrature.
ABCD abcd_quadrature(double l0, double l1, double p, double h, const QuadratureRule& rule = {});

// c = max_j (|s_{j-1,j}| + |s_{j,j+1}|) / s_jj.
double dominance_factor(const GramSystem& gram);
int dominance_row(const GramSystem& gram);

// Thomas recurrence when the system is dominant, pivoted elimination otherwise.
std::vector<double> tridiag_solve(const GramSystem& gram);
std::vector<double> tridiag_solve(std::span<const double> sub, std::span<const double> diag,
                                  std::span<const double> super, std::span<const double> rhs);

struct ProjectionResult {
    std::vector<double> coeffs;
    double c = 0.0;
    std::optional<double> norm_bound;
};

// Best approximation of g in span{H_j} for <.,.>_p.
ProjectionResult project(const HatBasis& basis, const Function& g, double p, const QuadratureRule& rule = {});

enum class NormBoundKind { Polynomial, Symmetric, MixedSign, Generic };

struct NormBound {
    double value;
    NormBoundKind kind;
    double c;       // sup |T| over the mesh (generic case), else the closed-form dominance bound
    double sup_hats;
    double sup_s;
};

// Sharpest applicable bound on the sup-norm of the projection. Throws
// DominanceError when sup |T| reaches 1 on some interval.
NormBound operator_norm_bound_detail(const HatBasis& basis, double p);
double operator_norm_bound(const HatBasis& basis, double p);
// Generic sup-based bound, skipping the closed-form special cases.
NormBound operator_norm_bound_generic(const HatBasis& basis, double p);
// max_t sum|H_j| / (1 - c) * max_j int H_j w / int H_j^2 w with c from the Gram matrix.
double operator_norm_bound_first(const HatBasis& basis, double p);

// Closed-form bound on T^{(0)} for l0 < 0 < l1.
double tbound_mixed(double l0, double l1);
// 2 max{(2 l1 - 4 l0)/(-3 l0), (4 l1 - 2 l0)/(3 l1)} for l0 < 0 < l1.
double norm_bound_mixed(double l0, double l1);

// max{1/2, (2-a-b)/(2(2-a)), (2a^2+(2a-1)b+2-3a)/(2(1-2a)(2-a)), (1-b)/(2(1-2a))}, a < 0.
double lemma_constant(double a, double b);

}  // namespace expspline
