#include "expspline/errbound2.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "expspline/errors.hpp"
#include "expspline/fundamental.hpp"

namespace expspline {

namespace {

void check_interval(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        std::ostringstream msg;
        msg << "interval requires a < b (got a = " << a << ", b = " << b << ")";
        throw DomainError(msg.str());
    }
}

void check_point(double a, double b, double t) {
    if (!(t >= a && t <= b)) {
        std::ostringstream msg;
        msg << "t = " << t << " outside [" << a << ", " << b << "]";
        throw DomainError(msg.str());
    }
}

Scaled omega_scaled(double l0, double l1, double a, double b, double t) {
    const double x = t - a;
    const double y = b - t;
    const FrequencyVector neg{-l0, -l1};
    const FrequencyVector neg0{-l0, -l1, 0.0};
    const FrequencyVector pos0{l0, l1, 0.0};
    Scaled first = fundamental_scaled(neg, y) * fundamental_scaled(neg0, x);
    Scaled second = exp_scaled(-(l0 + l1) * y) * fundamental_scaled(neg, x) * fundamental_scaled(pos0, y);
    return (first + second) / fundamental_scaled(neg, b - a);
}

struct PairKey {
    double u;
    double v;
    bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        return std::hash<double>{}(k.u) ^ (std::hash<double>{}(k.v) * 1000003u);
    }
};

struct UnitMaximum {
    double M;
    double tau;
};

class MCache {
public:
    bool find(const PairKey& key, UnitMaximum& out) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void store(const PairKey& key, UnitMaximum value) {
        std::unique_lock lock(mutex_);
        map_[key] = value;
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<PairKey, UnitMaximum, PairKeyHash> map_;
};

MCache& m_cache() {
    static MCache cache;
    return cache;
}

}  // namespace

double omega_eval(double l0, double l1, double a, double b, double t) {
    check_interval(a, b);
    check_point(a, b, t);
    if (t == a || t == b) return 0.0;
    return omega_scaled(l0, l1, a, b, t).value();
}

double green_eval(double l0, double l1, double a, double b, double t, double s) {
    check_interval(a, b);
    check_point(a, b, t);
    check_point(a, b, s);
    const FrequencyVector pos{l0, l1};
    const FrequencyVector neg{-l0, -l1};
    const Scaled den = fundamental_scaled(neg, b - a);
    if (t <= s) {
        // f(t) g(s) / w(s)
        Scaled v = fundamental_scaled(pos, t - a) * exp_scaled(-(l0 + l1) * (b - a)) * fundamental_scaled(pos, b - s);
        return -(v / den).value();
    }
    Scaled v = fundamental_scaled(neg, b - t) * fundamental_scaled(neg, s - a);
    return -(v / den).value();
}

double green_diagonal(double l0, double l1, double a, double b, double t) {
    check_interval(a, b);
    check_point(a, b, t);
    const FrequencyVector neg{-l0, -l1};
    Scaled v = fundamental_scaled(neg, b - t) * fundamental_scaled(neg, t - a);
    return -(v / fundamental_scaled(neg, b - a)).value();
}

double omega_via_green(double l0, double l1, double a, double b, double t, const QuadratureRule& rule) {
    check_interval(a, b);
    check_point(a, b, t);
    auto g = [&](double s) { return green_eval(l0, l1, a, b, t, s); };
    const double bp[] = {t};
    return -integrate(g, a, b, rule, bp).value;
}

double mstar(double x) {
    if (!std::isfinite(x)) throw DomainError("mstar of a non-finite argument");
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.125;
    const double r = std::expm1(-0.5 * ax) / ax;
    return r * r / (1.0 + std::exp(-ax));
}

IntervalBoundData maximize_omega(double l0, double l1, double a, double b) {
    check_interval(a, b);
    constexpr int kScan = 512;
    const double h = b - a;
    auto omega = [&](double t) { return omega_scaled(l0, l1, a, b, t).value(); };
    int best = 1;
    double best_value = -1.0;
    for (int i = 1; i < kScan - 1; ++i) {
        const double t = a + h * static_cast<double>(i) / (kScan - 1);
        const double v = omega(t);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    double lo = a + h * static_cast<double>(best - 1) / (kScan - 1);
    double hi = a + h * static_cast<double>(best + 1) / (kScan - 1);
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = omega(x1);
    double f2 = omega(x2);
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * std::max(1.0, h); ++iter) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = omega(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = omega(x1);
        }
    }
    double t_max = f1 > f2 ? x1 : x2;
    double m = std::max(f1, f2);
    if (best_value > m) {
        m = best_value;
        t_max = a + h * static_cast<double>(best) / (kScan - 1);
    }
    return {a, b, l0, l1, m, t_max};
}

IntervalBoundData M_constant(double l0, double l1, double a, double b) {
    check_interval(a, b);
    const double h = b - a;
    if (l1 == -l0) return {a, b, l0, l1, h * h * mstar(l1 * h), 0.5 * (a + b)};
    const PairKey key{l0 * h, l1 * h};
    UnitMaximum unit{};
    if (!m_cache().find(key, unit)) {
        IntervalBoundData d = maximize_omega(key.u, key.v, 0.0, 1.0);
        unit = {d.M, d.t_max};
        m_cache().store(key, unit);
    }
    return {a, b, l0, l1, h * h * unit.M, a + h * unit.tau};
}

double interp2_error_bound(const HatBasis& basis, std::span<const double> maxLf) {
    const int intervals = basis.partition().intervals();
    if (static_cast<int>(maxLf.size()) != intervals) {
        std::ostringstream msg;
        msg << "interp2_error_bound expects " << intervals << " maxLf entries, got " << maxLf.size();
        throw DomainError(msg.str());
    }
    double max_m = 0.0;
    double max_lf = 0.0;
    for (int j = 0; j < intervals; ++j) {
        if (!(maxLf[j] >= 0.0)) throw DomainError("maxLf entries must be nonnegative");
        const auto& pr = basis.pair(j);
        max_m = std::max(max_m, M_constant(pr.l0, pr.l1, basis.partition().knot(j), basis.partition().knot(j + 1)).M);
        max_lf = std::max(max_lf, maxLf[j]);
    }
    return max_m * max_lf;
}

}  // namespace expspline
