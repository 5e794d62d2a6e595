#include "expspline/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "expspline/errors.hpp"

namespace expspline {

namespace {

constexpr double kPruneThreshold = 1e-300;

using TermMap = std::map<std::pair<double, int>, double>;

std::vector<ExpTerm> from_map(const TermMap& m) {
    std::vector<ExpTerm> out;
    out.reserve(m.size());
    for (const auto& [key, c] : m) {
        if (std::abs(c) >= kPruneThreshold) out.push_back({key.first, key.second, c});
    }
    return out;
}

TermMap to_map(const std::vector<ExpTerm>& terms) {
    TermMap m;
    for (const auto& t : terms) m[{t.mu, t.s}] += t.c;
    return m;
}

// Truncated power series product, orders 0..len-1.
std::vector<double> series_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

ExpPolynomial::ExpPolynomial(std::vector<ExpTerm> terms) {
    for (const auto& t : terms) {
        if (t.s < 0) throw DomainError("negative power in exponential polynomial");
        if (!std::isfinite(t.mu) || !std::isfinite(t.c)) throw DomainError("non-finite exponential polynomial term");
    }
    terms_ = from_map(to_map(terms));
}

double ExpPolynomial::operator()(double t) const {
    double sum = 0.0;
    for (const auto& term : terms_) sum += term.c * std::pow(t, term.s) * std::exp(term.mu * t);
    return sum;
}

ExpPolynomial ExpPolynomial::derivative() const {
    std::vector<ExpTerm> out;
    out.reserve(2 * terms_.size());
    for (const auto& t : terms_) {
        if (t.mu != 0.0) out.push_back({t.mu, t.s, t.c * t.mu});
        if (t.s > 0) out.push_back({t.mu, t.s - 1, t.c * t.s});
    }
    return ExpPolynomial(std::move(out));
}

ExpPolynomial ExpPolynomial::lowered(double lambda) const { return derivative() - (*this) * lambda; }

ExpPolynomial ExpPolynomial::operator+(const ExpPolynomial& o) const {
    std::vector<ExpTerm> all(terms_);
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return ExpPolynomial(std::move(all));
}

ExpPolynomial ExpPolynomial::operator-(const ExpPolynomial& o) const { return *this + o * -1.0; }

ExpPolynomial ExpPolynomial::operator*(double k) const {
    std::vector<ExpTerm> out(terms_);
    for (auto& t : out) t.c *= k;
    return ExpPolynomial(std::move(out));
}

double ExpPolynomial::max_coefficient_difference(const ExpPolynomial& o) const {
    TermMap m = to_map(terms_);
    for (const auto& t : o.terms_) m[{t.mu, t.s}] -= t.c;
    double worst = 0.0;
    for (const auto& [key, c] : m) worst = std::max(worst, std::abs(c));
    return worst;
}

std::vector<ExpTerm> confluent_basis(const FrequencyVector& freqs, double tol_rel) {
    std::vector<ExpTerm> out;
    for (const auto& [mu, mult] : freqs.multiplicities(tol_rel)) {
        for (int s = 0; s < mult; ++s) out.push_back({mu, s, 1.0});
    }
    return out;
}

ExpPolynomial fundamental_exppoly(const FrequencyVector& freqs, double tol_rel) {
    if (freqs.empty()) throw DomainError("fundamental function of an empty frequency vector");
    const auto groups = freqs.multiplicities(tol_rel);
    std::vector<ExpTerm> out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double mu = groups[g].first;
        const int m = groups[g].second;
        // Taylor coefficients of 1/q(z) about mu, q = prod over other groups.
        std::vector<double> inv_q(m, 0.0);
        inv_q[0] = 1.0;
        for (std::size_t o = 0; o < groups.size(); ++o) {
            if (o == g) continue;
            const double d = mu - groups[o].first;
            std::vector<double> factor(m);
            double pk = 1.0 / d;
            for (int k = 0; k < m; ++k) {
                factor[k] = pk;
                pk *= -1.0 / d;
            }
            for (int r = 0; r < groups[o].second; ++r) inv_q = series_mul(inv_q, factor);
        }
        double inv_fact = 1.0;
        for (int s = 0; s < m; ++s) {
            if (s > 0) inv_fact /= s;
            out.push_back({mu, s, inv_fact * inv_q[m - 1 - s]});
        }
    }
    return ExpPolynomial(std::move(out));
}

int count_sign_changes(const ExpPolynomial& poly, double a, double b, int samples) {
    if (samples < 2) throw DomainError("count_sign_changes needs at least 2 samples");
    int changes = 0;
    int last = 0;
    for (int i = 0; i < samples; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const double v = poly(t);
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++changes;
        last = sign;
    }
    return changes;
}

}  // namespace expspline
