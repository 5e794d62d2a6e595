#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expspline/hatbasis.hpp"
#include "expspline/l2proj.hpp"
#include "expspline/quadrature.hpp"

namespace expspline {

using Quad = std::array<double, 4>;

// One frequency quadruple (l0, l1, l2, l3) per interval. The order-4 operator
// on interval j is (D - l0)(D - l1)(D - l2)(D - l3); the ordering matters only
// for the error certificate, which needs l0 = -p - l2 and l1 = -p - l3.
class QuadFrequencySet {
public:
    // With p given, the weight condition is checked; without, p is searched
    // for the given ordering and left empty when none exists.
    explicit QuadFrequencySet(std::vector<Quad> quads, std::optional<double> p = std::nullopt);

    // xi_j -> (-xi_j, xi_j, xi_j, -xi_j), p = 0.
    static QuadFrequencySet symmetric(std::span<const double> xi);
    static QuadFrequencySet uniform(const Quad& quad, int intervals, std::optional<double> p = std::nullopt);

    // Reorders every quadruple so that a common p exists (p itself when given).
    // Throws DomainError listing the candidate p values of every interval.
    static QuadFrequencySet arranged(std::vector<Quad> quads, std::optional<double> p = std::nullopt);

    int size() const noexcept { return static_cast<int>(quads_.size()); }
    const Quad& operator[](int j) const { return quads_[j]; }
    const std::vector<Quad>& quads() const noexcept { return quads_; }
    const std::optional<double>& p() const noexcept { return p_; }

    // |l0 + p + l2| and |l1 + p + l3| within a relative 1e-12 on every interval.
    bool satisfies(double p) const;

    // (l0, l1) sorted: the hat pair of interval j.
    FrequencyPair hat_pair(int j) const;
    // (l2, l3) sorted.
    FrequencyPair outer_pair(int j) const;
    std::vector<FrequencyPair> hat_pairs() const;

    bool all_zero() const;
    // p = 0 and l1 = -l0 on every interval (the quadruple is {xi, xi, -xi, -xi}).
    bool all_symmetric() const;

private:
    std::vector<Quad> quads_;
    std::optional<double> p_;
};

struct SolveInfo {
    double condition = 0.0;
    double residual = 0.0;  // ||A x - b||_inf / (||A||_inf ||x||_inf + ||b||_inf)
    bool ill_conditioned = false;
};

// C^2 piecewise exponential spline. On [t_j, t_{j+1}]
//   s(t) = sum_k a_jk Phi_{(l0..lk)}(t - t_j),
// stored as c_jk = a_jk h_j^k so that the local basis Phi_{h (l0..lk)}((t - t_j)/h)
// is O(1) on the unit interval.
class SplineOrder4 {
public:
    // coeffs: a_jk in the shifted basis above.
    SplineOrder4(Partition partition, QuadFrequencySet quads, std::vector<std::array<double, 4>> coeffs,
                 SolveInfo info = {});

    const Partition& partition() const noexcept { return partition_; }
    const QuadFrequencySet& quads() const noexcept { return quads_; }
    std::vector<std::array<double, 4>> coefficients() const;
    const SolveInfo& solve_info() const noexcept { return info_; }

    double operator()(double t) const { return derivative(t, 0); }
    double derivative(double t, int order) const;
    // Orders 0..3 at t from one table.
    std::array<double, 4> derivatives(double t) const;
    // Same, on interval j at its local coordinate (left or right limits at knots).
    std::array<double, 4> local_derivatives(int interval, double tau) const;
    // Batched evaluation; points may come in any order.
    void evaluate(std::span<const double> t, int order, std::span<double> out) const;
    // sum_k |c_jk| |b_k^{(m)}(tau)| h^{-m}: the size of the terms summed at tau.
    double term_magnitude(int interval, double tau, int order) const;

private:
    Partition partition_;
    QuadFrequencySet quads_;
    std::vector<std::array<double, 4>> scaled_;
    SolveInfo info_;
};

// Clamped interpolation: s(t_j) = values[j], s'(t_0) = d_left, s'(t_{n-1}) = d_right.
// Throws SingularSystemError with the condition estimate when the system cannot be solved.
SplineOrder4 build_interpolant4(const Partition& partition, const QuadFrequencySet& quads, std::span<const double> values,
                                double d_left, double d_right);

double spline4_eval(const SplineOrder4& s, double t, int order);

struct KnotJump {
    int knot;
    std::array<double, 3> jump;       // |s^{(m)}(t+) - s^{(m)}(t-)|, m = 0..2
    std::array<double, 3> threshold;  // 1e-9 (1 + term magnitude)
};

struct SmoothnessReport {
    std::vector<KnotJump> knots;
    double max_jump = 0.0;
    bool ok() const;
};

SmoothnessReport smoothness_report(const SplineOrder4& s);

// F, F', F'' at t.
using Derivs2 = std::function<std::array<double, 3>(double)>;

// max_i |<f, H_i>_p| with f = D_{l2} D_{l3} (F - s) on each interval.
double residual_orthogonality(const Derivs2& f_derivs, const SplineOrder4& s, const HatBasis& basis, double p,
                              const QuadratureRule& rule = {});

struct BoundCertificate {
    double delta = 0.0;
    double C = 0.0;
    double norm_bound = 0.0;
    double M2_max = 0.0;
    double M0_max = 0.0;
    double c_factor = 0.0;
    double bound = 0.0;
    NormBoundKind kind = NormBoundKind::Generic;
};

// C = (1 + ||P||) max M_{l2,l3} max M_{l0,l1}; bound = C maxLF. Polynomial quads
// give Delta^4/16, symmetric quads (5/64) Delta^4.
BoundCertificate error_bound4(const Partition& partition, const QuadFrequencySet& quads, double p, double maxLF);

// (1 + ||P||) maxLF, bounding max |D_{l2} D_{l3} (F - I4 F)|.
double second_order_error_bound(const Partition& partition, const QuadFrequencySet& quads, double p, double maxLF);

// {"knots": [...], "quads": [[...]], "p": p|null, "coefficients": [[a_j0..a_j3], ...]}
std::string spline4_to_json(const SplineOrder4& s);

}  // namespace expspline
