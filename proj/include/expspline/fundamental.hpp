#pragma once

#include <array>
#include <span>

#include "expspline/frequency.hpp"

namespace expspline {

inline constexpr int kMaxNodes = 16;

// A real number stored as mantissa * exp(log_scale). Used to form ratios of
// fundamental functions whose raw values over- or underflow.
struct Scaled {
    double mantissa = 0.0;
    double log_scale = 0.0;

    // Throws RangeError when the raw value is not representable.
    double value() const;
    Scaled operator*(const Scaled& o) const { return {mantissa * o.mantissa, log_scale + o.log_scale}; }
    Scaled operator/(const Scaled& o) const { return {mantissa / o.mantissa, log_scale - o.log_scale}; }
    Scaled operator+(const Scaled& o) const;
    Scaled operator-() const { return {-mantissa, log_scale}; }
};

inline Scaled exp_scaled(double x) { return {1.0, x}; }

// Phi over every contiguous sub-range of a node list at a fixed t:
//   entry(i, j) = exp(-log_scale) * Phi_{(x_i, ..., x_j)}(t),   i <= j.
// Computed as the divided-difference table of z -> e^{zt}: Taylor series of
// the scaled nodes on a short step, followed by repeated squaring (Leibniz
// rule). Every entry is positive for t > 0, so squaring has no cancellation,
// and nearby or repeated nodes need no special handling.
class FundamentalTable {
public:
    FundamentalTable(std::span<const double> nodes, double t);

    int size() const noexcept { return n_; }
    double log_scale() const noexcept { return log_scale_; }
    double t() const noexcept { return t_; }
    double entry(int i, int j) const { return b_[i * kMaxNodes + j]; }

    // exp(-log_scale) * d^m/dt^m Phi_{(x_i..x_j)}(t), using
    //   [x_i..x_j](z^m e^{tz}) = sum_q h_{m-(q-i)}(x_i..x_q) [x_q..x_j] e^{tz}
    // with h the complete homogeneous symmetric polynomials.
    double derivative(int i, int j, int m) const;

    Scaled scaled(int i, int j, int m = 0) const { return {m == 0 ? entry(i, j) : derivative(i, j, m), log_scale_}; }

private:
    int n_;
    double t_;
    double log_scale_;
    std::array<double, kMaxNodes> x_{};
    std::array<double, kMaxNodes * kMaxNodes> b_{};
};

namespace detail {
// Taylor step: after scaling, every |x_i - max x| * tau is at most this.
inline constexpr double kTaylorRadius = 0.5;
// 0.5^18 / 18! < 1e-21.
inline constexpr int kTaylorTerms = 18;
// Number of squarings used for node spread `spread` at t >= 0.
int taylor_squarings(double spread, double t);
// 1/k! for k <= kTaylorTerms + kMaxNodes.
double inverse_factorial(int k);
// Fills b (row stride kMaxNodes) with exp(-max(x) t) Phi_{(x_i..x_j)}(t) for t >= 0.
void fundamental_table_nonneg(const double* x, int n, double t, double* b);
// Complete homogeneous symmetric polynomials h_0..h_mmax of x[0..n).
void complete_homogeneous(const double* x, int n, int mmax, double* h);
}  // namespace detail

Scaled fundamental_scaled(const FrequencyVector& freqs, double t, int order = 0);

double fundamental_eval(const FrequencyVector& freqs, double t);
double fundamental_derivative(const FrequencyVector& freqs, double t, int order);

// integral_0^h Phi_L(t) dt = Phi_{(L, 0)}(h).
double integrate_fundamental(const FrequencyVector& freqs, double h);

// Phi_A(x) / Phi_B(y), formed without overflow.
double fundamental_ratio(const FrequencyVector& a, double x, const FrequencyVector& b, double y);

}  // namespace expspline
