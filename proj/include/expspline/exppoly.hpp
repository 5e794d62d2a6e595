#pragma once

#include <vector>

#include "expspline/frequency.hpp"

namespace expspline {

struct ExpTerm {
    double mu;
    int s;
    double c;
};

// Sum of c * t^s * e^{mu t}. Terms are kept sorted by (mu, s) with unique
// keys; coefficients below 1e-300 in magnitude are dropped.
class ExpPolynomial {
public:
    ExpPolynomial() = default;
    explicit ExpPolynomial(std::vector<ExpTerm> terms);

    const std::vector<ExpTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    double operator()(double t) const;
    ExpPolynomial derivative() const;
    // (D - lambda) applied to this.
    ExpPolynomial lowered(double lambda) const;

    ExpPolynomial operator+(const ExpPolynomial& o) const;
    ExpPolynomial operator-(const ExpPolynomial& o) const;
    ExpPolynomial operator*(double k) const;

    // Largest coefficient difference over the union of keys.
    double max_coefficient_difference(const ExpPolynomial& o) const;

private:
    std::vector<ExpTerm> terms_;
};

// Basis t^s e^{mu t} of E(Lambda) after clustering nodes with tol_rel.
std::vector<ExpTerm> confluent_basis(const FrequencyVector& freqs, double tol_rel = 1e-8);

// Phi_Lambda in the confluent basis (partial fractions of 1/prod(z - lambda_j)).
ExpPolynomial fundamental_exppoly(const FrequencyVector& freqs, double tol_rel = 1e-8);

// Sign changes of poly on `samples` equally spaced points of [a, b]; exact
// zeros are skipped. A lower bound on the number of zeros in [a, b].
int count_sign_changes(const ExpPolynomial& poly, double a, double b, int samples);

}  // namespace expspline
