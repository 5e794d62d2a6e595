#include "expspline/hatbasis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "expspline/errors.hpp"

namespace expspline {

Partition::Partition(std::vector<double> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) throw DomainError("a partition needs at least two knots");
    for (std::size_t j = 0; j < knots_.size(); ++j) {
        if (!std::isfinite(knots_[j])) throw DomainError("non-finite knot");
        if (j > 0 && !(knots_[j] > knots_[j - 1])) {
            std::ostringstream msg;
            msg << "knots must be strictly increasing (t[" << j - 1 << "] = " << knots_[j - 1] << ", t[" << j
                << "] = " << knots_[j] << ")";
            throw DomainError(msg.str());
        }
        if (j > 0) mesh_ = std::max(mesh_, knots_[j] - knots_[j - 1]);
    }
}

Partition Partition::uniform(double a, double b, int n) {
    if (n < 2) throw DomainError("a uniform partition needs n >= 2");
    std::vector<double> k(n);
    for (int j = 0; j < n; ++j) k[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
    k.back() = b;
    return Partition(std::move(k));
}

int Partition::locate(double t) const {
    if (!(t >= knots_.front() && t <= knots_.back())) {
        std::ostringstream msg;
        msg << "t = " << t << " outside [" << knots_.front() << ", " << knots_.back() << "]";
        throw DomainError(msg.str());
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    int j = static_cast<int>(it - knots_.begin()) - 1;
    return std::min(j, intervals() - 1);
}

double monotone_radius(double l0, double l1) {
    if (!std::isfinite(l0) || !std::isfinite(l1)) throw DomainError("non-finite frequency");
    if (l0 > l1) throw DomainError("monotone_radius requires l0 <= l1");
    if (l0 <= 0.0 && l1 >= 0.0) return std::numeric_limits<double>::infinity();
    if (l0 > 0.0) {
        if (l0 == l1) return 1.0 / l0;
        return std::log1p((l1 - l0) / l0) / (l1 - l0);
    }
    // Both negative: reflection of the positive case.
    if (l0 == l1) return -1.0 / l0;
    return std::log1p((l1 - l0) / -l1) / (l1 - l0);
}

namespace {

// log |sinh(d x) / d| for d x beyond the direct range.
double log_psi(double d, double x) {
    const double a = std::abs(d * x);
    return a - std::log(2.0) - std::log(std::abs(d)) + std::log1p(-std::exp(-2.0 * a));
}

}  // namespace

double phi2_ratio(double l0, double l1, double x, double y) {
    const double sigma = 0.5 * (l0 + l1);
    const double d = 0.5 * (l1 - l0);
    if (y == 0.0) throw DomainError("hat ratio with vanishing denominator");
    if (x == 0.0) return 0.0;
    const double growth = sigma * (x - y);
    if (d == 0.0) return (x / y) * std::exp(growth);
    constexpr double kDirect = 300.0;
    if (std::abs(d * x) <= kDirect && std::abs(d * y) <= kDirect) {
        const double r = (std::sinh(d * x) / std::sinh(d * y));
        return r * std::exp(growth);
    }
    const double sign = ((x > 0) == (y > 0)) ? 1.0 : -1.0;
    const double lx = std::abs(d * x) <= kDirect ? std::log(std::abs(std::sinh(d * x) / d)) : log_psi(d, x);
    const double ly = std::abs(d * y) <= kDirect ? std::log(std::abs(std::sinh(d * y) / d)) : log_psi(d, y);
    return sign * std::exp(growth + lx - ly);
}

HatBasis::HatBasis(Partition partition, std::vector<FrequencyPair> pairs, HatBasisOptions options)
    : partition_(std::move(partition)), pairs_(std::move(pairs)) {
    if (static_cast<int>(pairs_.size()) != partition_.intervals()) {
        std::ostringstream msg;
        msg << "expected " << partition_.intervals() << " frequency pairs, got " << pairs_.size();
        throw DomainError(msg.str());
    }
    radii_.resize(pairs_.size());
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        const auto& pr = pairs_[j];
        if (pr.l0 > pr.l1) {
            std::ostringstream msg;
            msg << "pair " << j << " is not ordered: (" << pr.l0 << ", " << pr.l1 << ")";
            throw DomainError(msg.str());
        }
        radii_[j] = monotone_radius(pr.l0, pr.l1);
        const double h = partition_.length(static_cast<int>(j));
        if (!options.allow_nonmonotone && h > radii_[j]) {
            std::ostringstream msg;
            msg << "interval " << j << " has length " << h << " exceeding the monotone radius " << radii_[j]
                << " of pair (" << pr.l0 << ", " << pr.l1 << ")";
            throw DomainError(msg.str());
        }
    }
}

double HatBasis::falling(int interval, double t) const {
    const auto& pr = pairs_[interval];
    const double right = partition_.knot(interval + 1);
    return phi2_ratio(pr.l0, pr.l1, t - right, partition_.knot(interval) - right);
}

double HatBasis::rising(int interval, double t) const {
    const auto& pr = pairs_[interval];
    const double left = partition_.knot(interval);
    return phi2_ratio(pr.l0, pr.l1, t - left, partition_.knot(interval + 1) - left);
}

double HatBasis::operator()(int j, double t) const {
    if (j < 0 || j >= size()) throw DomainError("hat index out of range");
    if (!(t >= partition_.front() && t <= partition_.back())) throw DomainError("hat evaluated outside the partition");
    if (j > 0 && t >= partition_.knot(j - 1) && t <= partition_.knot(j)) return rising(j - 1, t);
    if (j + 1 < size() && t >= partition_.knot(j) && t <= partition_.knot(j + 1)) return falling(j, t);
    return 0.0;
}

bool HatBasis::all_mixed_sign() const {
    return std::all_of(pairs_.begin(), pairs_.end(), [](const FrequencyPair& p) { return p.l0 <= 0.0 && p.l1 >= 0.0; });
}

double hat_eval(const HatBasis& basis, int j, double t) { return basis(j, t); }

double sum_hats(const HatBasis& basis, double t) {
    const int k = basis.partition().locate(t);
    return basis.falling(k, t) + basis.rising(k, t);
}

SplineOrder2::SplineOrder2(HatBasis basis, std::vector<double> coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != basis_.size()) throw DomainError("coefficient count does not match the basis");
}

double SplineOrder2::operator()(double t) const {
    const int k = basis_.partition().locate(t);
    if (t == basis_.partition().knot(k)) return coeffs_[k];
    if (t == basis_.partition().knot(k + 1)) return coeffs_[k + 1];
    return coeffs_[k] * basis_.falling(k, t) + coeffs_[k + 1] * basis_.rising(k, t);
}

SplineOrder2 interpolate2(const HatBasis& basis, std::span<const double> values) {
    if (static_cast<int>(values.size()) != basis.size()) {
        std::ostringstream msg;
        msg << "interpolate2 expects " << basis.size() << " values, got " << values.size();
        throw DomainError(msg.str());
    }
    return SplineOrder2(basis, std::vector<double>(values.begin(), values.end()));
}

}  // namespace expspline
