#include "expspline/operators.hpp"

#include <string>

#include "expspline/errors.hpp"

namespace expspline {

std::vector<double> elementary_symmetric(const FrequencyVector& freqs) {
    std::vector<double> e(freqs.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        for (std::size_t j = i + 1; j >= 1; --j) e[j] += freqs[i] * e[j - 1];
    }
    return e;
}

std::vector<double> operator_coefficients(const FrequencyVector& freqs) {
    const auto e = elementary_symmetric(freqs);
    const std::size_t n = freqs.size();
    std::vector<double> a(n + 1);
    for (std::size_t k = 0; k <= n; ++k) a[k] = ((n - k) % 2 == 0 ? 1.0 : -1.0) * e[n - k];
    return a;
}

double operator_apply(const FrequencyVector& freqs, std::span<const double> derivs) {
    if (derivs.size() != freqs.size() + 1) {
        throw DomainError("operator_apply expects " + std::to_string(freqs.size() + 1) + " derivatives, got " +
                          std::to_string(derivs.size()));
    }
    const auto a = operator_coefficients(freqs);
    double sum = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) sum += a[k] * derivs[k];
    return sum;
}

ExpPolynomial operator_apply(const FrequencyVector& freqs, const ExpPolynomial& f) {
    ExpPolynomial out = f;
    for (double lambda : freqs.values()) out = out.lowered(lambda);
    return out;
}

}  // namespace expspline
