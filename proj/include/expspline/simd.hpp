#pragma once

#include <span>
#include <vector>

namespace expspline::simd {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa) noexcept;

// Best instruction set the CPU supports and this build contains.
Isa detected_isa() noexcept;
// detected_isa() unless EXPSPLINE_SIMD=scalar is set or set_isa() was called.
Isa active_isa() noexcept;
// Throws DomainError when `isa` is not available.
void set_isa(Isa isa);
void reset_isa() noexcept;

// Coefficients of an expansion sum_k c_k Phi^{(m)}_{(x_0..x_k)} arranged for
// the kernels: G(q, k) = c_k h_{m-q}(x_0..x_q) for q <= min(k, m).
struct ExpansionPlan {
    std::vector<double> nodes;
    std::vector<double> g;  // row stride nodes.size()
    int order = 0;
    double xmax = 0.0;
    double spread = 0.0;
};

ExpansionPlan make_plan(std::span<const double> nodes, std::span<const double> coeffs, int order);

// out[i] = sum_k c_k d^m/ds^m Phi_{(x_0..x_k)}(s[i]) for s[i] >= 0.
void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out);
// max_i |a[i] - b[i]|; NaN if any difference is NaN.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

namespace scalar {
void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
// True when this build contains the AVX2 kernels.
bool compiled() noexcept;
void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

}  // namespace expspline::simd
