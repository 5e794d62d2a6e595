#include "expspline/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "expspline/errors.hpp"

namespace expspline {

BandMatrix::BandMatrix(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku) {
    if (n < 1 || kl < 0 || ku < 0) throw DomainError("band matrix needs n >= 1 and nonnegative bandwidths");
    data_.assign(static_cast<std::size_t>(n) * width(), 0.0);
}

double& BandMatrix::at(int i, int j) {
    if (i < 0 || i >= n_ || j < i - kl_ || j > i + ku_ || j < 0 || j >= n_) {
        std::ostringstream msg;
        msg << "entry (" << i << ", " << j << ") outside the band";
        throw DomainError(msg.str());
    }
    return raw(i, j);
}

double BandMatrix::get(int i, int j) const { return stored(i, j) ? raw(i, j) : 0.0; }

double BandMatrix::norm1() const {
    double best = 0.0;
    for (int j = 0; j < n_; ++j) {
        double sum = 0.0;
        for (int i = std::max(0, j - ku_ - kl_); i <= std::min(n_ - 1, j + kl_); ++i) sum += std::abs(get(i, j));
        best = std::max(best, sum);
    }
    return best;
}

double BandMatrix::norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i) {
        double sum = 0.0;
        for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + kl_ + ku_); ++j) sum += std::abs(raw(i, j));
        best = std::max(best, sum);
    }
    return best;
}

std::vector<double> BandMatrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw DomainError("band multiply: length mismatch");
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double sum = 0.0;
        for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + kl_ + ku_); ++j) sum += raw(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

BandedLU::BandedLU(BandMatrix a) : lu_(std::move(a)), pivots_(lu_.size(), 0), norm1_(lu_.norm1()) {
    const int n = lu_.n_;
    const int kl = lu_.kl_;
    const int reach = lu_.kl_ + lu_.ku_;
    for (int k = 0; k < n; ++k) {
        const int last_row = std::min(n - 1, k + kl);
        const int last_col = std::min(n - 1, k + reach);
        int p = k;
        double best = std::abs(lu_.raw(k, k));
        for (int i = k + 1; i <= last_row; ++i) {
            if (std::abs(lu_.raw(i, k)) > best) {
                best = std::abs(lu_.raw(i, k));
                p = i;
            }
        }
        pivots_[k] = p;
        if (best == 0.0 || !std::isfinite(best)) {
            std::ostringstream msg;
            msg << "band system is singular (zero pivot in column " << k << ")";
            throw SingularSystemError(msg.str(), std::numeric_limits<double>::infinity());
        }
        if (p != k) {
            for (int j = k; j <= last_col; ++j) std::swap(lu_.raw(k, j), lu_.raw(p, j));
        }
        const double pivot = lu_.raw(k, k);
        for (int i = k + 1; i <= last_row; ++i) {
            const double m = lu_.raw(i, k) / pivot;
            lu_.raw(i, k) = m;
            if (m == 0.0) continue;
            for (int j = k + 1; j <= last_col; ++j) lu_.raw(i, j) -= m * lu_.raw(k, j);
        }
    }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const {
    const int n = lu_.n_;
    if (static_cast<int>(b.size()) != n) throw DomainError("band solve: length mismatch");
    const int kl = lu_.kl_;
    const int reach = lu_.kl_ + lu_.ku_;
    std::vector<double> x(b.begin(), b.end());
    for (int k = 0; k < n; ++k) {
        std::swap(x[k], x[pivots_[k]]);
        for (int i = k + 1; i <= std::min(n - 1, k + kl); ++i) x[i] -= lu_.raw(i, k) * x[k];
    }
    for (int k = n - 1; k >= 0; --k) {
        double sum = x[k];
        for (int j = k + 1; j <= std::min(n - 1, k + reach); ++j) sum -= lu_.raw(k, j) * x[j];
        x[k] = sum / lu_.raw(k, k);
    }
    return x;
}

std::vector<double> BandedLU::solve_transpose(std::span<const double> b) const {
    const int n = lu_.n_;
    if (static_cast<int>(b.size()) != n) throw DomainError("band solve: length mismatch");
    const int kl = lu_.kl_;
    const int reach = lu_.kl_ + lu_.ku_;
    std::vector<double> y(b.begin(), b.end());
    for (int k = 0; k < n; ++k) {
        double sum = y[k];
        for (int i = std::max(0, k - reach); i < k; ++i) sum -= lu_.raw(i, k) * y[i];
        y[k] = sum / lu_.raw(k, k);
    }
    for (int k = n - 1; k >= 0; --k) {
        double sum = y[k];
        for (int i = k + 1; i <= std::min(n - 1, k + kl); ++i) sum -= lu_.raw(i, k) * y[i];
        y[k] = sum;
        std::swap(y[k], y[pivots_[k]]);
    }
    return y;
}

double BandedLU::condition_estimate() const {
    const int n = lu_.n_;
    auto norm1 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    };
    std::vector<double> x(n, 1.0 / n);
    double estimate = 0.0;
    int last = -1;
    for (int iter = 0; iter < 5; ++iter) {
        const std::vector<double> y = solve(x);
        estimate = std::max(estimate, norm1(y));
        std::vector<double> sign(n);
        for (int i = 0; i < n; ++i) sign[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        const std::vector<double> z = solve_transpose(sign);
        int j = 0;
        double zx = 0.0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(z[i]) > std::abs(z[j])) j = i;
            zx += z[i] * x[i];
        }
        if ((iter > 0 && std::abs(z[j]) <= zx) || j == last) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[j] = 1.0;
        last = j;
    }
    // Test vector with alternating signs catches cases the iteration misses.
    std::vector<double> alt(n);
    for (int i = 0; i < n; ++i) alt[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + (n > 1 ? static_cast<double>(i) / (n - 1) : 0.0));
    estimate = std::max(estimate, 2.0 * norm1(solve(alt)) / (3.0 * n));
    return norm1_ * estimate;
}

}  // namespace expspline
