#include "expspline/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expspline/errors.hpp"

namespace expspline {

namespace {

using detail::kTaylorRadius;
using detail::kTaylorTerms;

struct InverseFactorials {
    std::array<double, kTaylorTerms + kMaxNodes + 2> v{};
    InverseFactorials() {
        v[0] = 1.0;
        for (std::size_t k = 1; k < v.size(); ++k) v[k] = v[k - 1] / static_cast<double>(k);
    }
};

const InverseFactorials& inverse_factorials() {
    static const InverseFactorials f;
    return f;
}

void check_nodes(std::span<const double> nodes) {
    if (nodes.empty()) throw DomainError("fundamental function of an empty frequency vector");
    if (nodes.size() > static_cast<std::size_t>(kMaxNodes)) {
        throw DomainError("frequency vector longer than " + std::to_string(kMaxNodes));
    }
    for (double v : nodes) {
        if (!std::isfinite(v)) throw DomainError("non-finite frequency");
    }
}

}  // namespace

double Scaled::value() const {
    if (mantissa == 0.0) return 0.0;
    if (!std::isfinite(mantissa) || std::isnan(log_scale)) throw RangeError("fundamental function value is not finite");
    if (log_scale > -700.0 && log_scale < 700.0) {
        double v = mantissa * std::exp(log_scale);
        if (!std::isfinite(v)) throw RangeError("fundamental function value overflows");
        return v;
    }
    double k = std::floor(log_scale / std::log(2.0));
    if (k > 1e6) throw RangeError("fundamental function value overflows");
    if (k < -1e6) return 0.0;
    double r = log_scale - k * std::log(2.0);
    double v = std::ldexp(mantissa * std::exp(r), static_cast<int>(k));
    if (!std::isfinite(v)) throw RangeError("fundamental function value overflows");
    return v;
}

Scaled Scaled::operator+(const Scaled& o) const {
    if (mantissa == 0.0) return o;
    if (o.mantissa == 0.0) return *this;
    const double top = std::max(log_scale, o.log_scale);
    return {mantissa * std::exp(log_scale - top) + o.mantissa * std::exp(o.log_scale - top), top};
}

namespace detail {

int taylor_squarings(double spread, double t) {
    if (!(spread * t > kTaylorRadius)) return 0;
    int squarings = static_cast<int>(std::ceil(std::log2(spread * t / kTaylorRadius)));
    while (spread * std::ldexp(t, -squarings) > kTaylorRadius) ++squarings;
    return squarings;
}

double inverse_factorial(int k) { return inverse_factorials().v[k]; }

void complete_homogeneous(const double* x, int n, int mmax, double* h) {
    for (int m = 0; m <= mmax; ++m) h[m] = (m == 0) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i) {
        for (int m = 1; m <= mmax; ++m) h[m] += x[i] * h[m - 1];
    }
}

void fundamental_table_nonneg(const double* x, int n, double t, double* b) {
    const auto& inv = inverse_factorials().v;
    double xmax = x[0];
    double xmin = x[0];
    for (int i = 1; i < n; ++i) {
        xmax = std::max(xmax, x[i]);
        xmin = std::min(xmin, x[i]);
    }
    const double spread = xmax - xmin;
    const int squarings = taylor_squarings(spread, t);
    const double tau = std::ldexp(t, -squarings);

    std::array<double, kMaxNodes> y{};
    std::array<double, kMaxNodes> z{};
    for (int i = 0; i < n; ++i) {
        y[i] = x[i] - xmax;
        z[i] = y[i] * tau;
    }

    std::array<double, kTaylorTerms + 1> hm{};
    for (int i = 0; i < n; ++i) {
        b[i * kMaxNodes + i] = std::exp(z[i]);
        hm[0] = 1.0;
        for (int m = 1; m <= kTaylorTerms; ++m) hm[m] = hm[m - 1] * z[i];
        double tk = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const int k = j - i;
            tk *= tau;
            for (int m = 1; m <= kTaylorTerms; ++m) hm[m] += z[j] * hm[m - 1];
            double sum = 0.0;
            for (int m = kTaylorTerms; m >= 0; --m) sum += hm[m] * inv[m + k];
            b[i * kMaxNodes + j] = tk * sum;
        }
    }

    std::array<double, kMaxNodes * kMaxNodes> c{};
    for (int level = 1; level <= squarings; ++level) {
        const double tl = std::ldexp(tau, level);
        for (int i = 0; i < n; ++i) {
            c[i * kMaxNodes + i] = std::exp(y[i] * tl);
            for (int j = i + 1; j < n; ++j) {
                double sum = 0.0;
                for (int k = i; k <= j; ++k) sum += b[i * kMaxNodes + k] * b[k * kMaxNodes + j];
                c[i * kMaxNodes + j] = sum;
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) b[i * kMaxNodes + j] = c[i * kMaxNodes + j];
        }
    }
}

}  // namespace detail

FundamentalTable::FundamentalTable(std::span<const double> nodes, double t) : n_(static_cast<int>(nodes.size())), t_(t) {
    check_nodes(nodes);
    if (!std::isfinite(t)) throw DomainError("fundamental function evaluated at a non-finite t");
    std::copy(nodes.begin(), nodes.end(), x_.begin());
    if (t == 0.0) {
        log_scale_ = 0.0;
        for (int i = 0; i < n_; ++i) b_[i * kMaxNodes + i] = 1.0;
        return;
    }
    if (t > 0.0) {
        detail::fundamental_table_nonneg(x_.data(), n_, t, b_.data());
        log_scale_ = *std::max_element(x_.begin(), x_.begin() + n_) * t;
        return;
    }
    // Phi_L(-t) = (-1)^N Phi_{-L}(t) on every sub-range.
    std::array<double, kMaxNodes> neg{};
    for (int i = 0; i < n_; ++i) neg[i] = -x_[i];
    detail::fundamental_table_nonneg(neg.data(), n_, -t, b_.data());
    log_scale_ = *std::min_element(x_.begin(), x_.begin() + n_) * t;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; j += 2) b_[i * kMaxNodes + j] = -b_[i * kMaxNodes + j];
    }
}

double FundamentalTable::derivative(int i, int j, int m) const {
    if (m < 0) throw DomainError("negative derivative order");
    if (m == 0) return entry(i, j);
    std::array<double, 64> h{};
    if (m >= static_cast<int>(h.size())) throw DomainError("derivative order too large");
    h[0] = 1.0;
    for (int r = 1; r <= m; ++r) h[r] = h[r - 1] * x_[i];
    double sum = h[m] * entry(i, j);
    const int qmax = std::min(j, i + m);
    for (int q = i + 1; q <= qmax; ++q) {
        for (int r = 1; r <= m; ++r) h[r] += x_[q] * h[r - 1];
        sum += h[m - (q - i)] * entry(q, j);
    }
    return sum;
}

Scaled fundamental_scaled(const FrequencyVector& freqs, double t, int order) {
    FundamentalTable table(freqs.span(), t);
    return table.scaled(0, table.size() - 1, order);
}

double fundamental_eval(const FrequencyVector& freqs, double t) { return fundamental_scaled(freqs, t).value(); }

double fundamental_derivative(const FrequencyVector& freqs, double t, int order) {
    if (order < 0) throw DomainError("negative derivative order");
    return fundamental_scaled(freqs, t, order).value();
}

double integrate_fundamental(const FrequencyVector& freqs, double h) {
    return fundamental_eval(freqs.appended(0.0), h);
}

double fundamental_ratio(const FrequencyVector& a, double x, const FrequencyVector& b, double y) {
    Scaled num = fundamental_scaled(a, x);
    Scaled den = fundamental_scaled(b, y);
    if (den.mantissa == 0.0) throw DomainError("ratio with a vanishing denominator");
    return (num / den).value();
}

}  // namespace expspline
