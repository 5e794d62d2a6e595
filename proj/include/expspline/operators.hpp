#pragma once

#include <span>
#include <vector>

#include "expspline/exppoly.hpp"
#include "expspline/frequency.hpp"

namespace expspline {

// e_0, ..., e_{N+1} of the frequencies (e_0 = 1).
std::vector<double> elementary_symmetric(const FrequencyVector& freqs);

// a_0, ..., a_{N+1} with prod_j (z - lambda_j) = sum_k a_k z^k, so that
// L_Lambda F = sum_k a_k F^{(k)}.
std::vector<double> operator_coefficients(const FrequencyVector& freqs);

// L_Lambda F(t) from derivs = F(t), F'(t), ..., F^{(N+1)}(t).
double operator_apply(const FrequencyVector& freqs, std::span<const double> derivs);

ExpPolynomial operator_apply(const FrequencyVector& freqs, const ExpPolynomial& f);

}  // namespace expspline
