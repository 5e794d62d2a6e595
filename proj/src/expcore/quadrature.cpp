#include "expspline/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "expspline/errors.hpp"

namespace expspline {

namespace {

constexpr int kPoints = 15;

struct GaussLegendre15 {
    std::array<double, kPoints> x{};
    std::array<double, kPoints> w{};

    GaussLegendre15() {
        for (int i = 0; i < kPoints; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (kPoints + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = z;
                for (int k = 2; k <= kPoints; ++k) {
                    double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = kPoints * (z * p1 - p0) / (z * z - 1.0);
                double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre15& rule15() {
    static const GaussLegendre15 r;
    return r;
}

struct Panel {
    double a;
    double b;
    double whole;   // GL15 over [a, b]
    double left;    // GL15 over [a, mid]
    double right;   // GL15 over [mid, b]
    double error;
    double value() const { return left + right; }
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel make_panel(const Integrand& f, double a, double b, double whole) {
    const double mid = 0.5 * (a + b);
    Panel p{a, b, whole, gauss_legendre15(f, a, mid), gauss_legendre15(f, mid, b), 0.0};
    p.error = std::abs(p.value() - whole);
    if (!std::isfinite(p.value())) throw QuadratureError("integrand is not finite on the integration range");
    return p;
}

}  // namespace

double gauss_legendre15(const Integrand& f, double a, double b) {
    const auto& r = rule15();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int i = 0; i < kPoints; ++i) sum += r.w[i] * f(mid + half * r.x[i]);
    return half * sum;
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureRule& rule,
                           std::span<const double> breakpoints) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
    if (a == b) return {};
    if (a > b) {
        auto r = integrate(f, b, a, rule, breakpoints);
        r.value = -r.value;
        return r;
    }
    std::vector<double> edges{a};
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Panel> heap;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        heap.push(make_panel(f, edges[i], edges[i + 1], gauss_legendre15(f, edges[i], edges[i + 1])));
    }

    auto totals = [&heap]() {
        // Summed from a copy so the order is deterministic.
        auto copy = heap;
        std::vector<Panel> all;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        double value = 0.0;
        double error = 0.0;
        for (const auto& p : all) {
            value += p.value();
            error += p.error;
        }
        return std::pair{value, error};
    };

    int subdivisions = 0;
    double value = 0.0;
    double error = 0.0;
    double running_error = 0.0;
    {
        auto [v, e] = totals();
        value = v;
        error = e;
        running_error = e;
    }
    while (error > std::max(rule.abs_tol, rule.rel_tol * std::abs(value))) {
        if (subdivisions >= rule.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << value << " +- " << error;
            throw QuadratureError(msg.str());
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel l = make_panel(f, worst.a, mid, worst.left);
        Panel r = make_panel(f, mid, worst.b, worst.right);
        running_error += l.error + r.error - worst.error;
        value += l.value() + r.value() - worst.value();
        heap.push(l);
        heap.push(r);
        ++subdivisions;
        error = running_error;
        if (error <= std::max(rule.abs_tol, rule.rel_tol * std::abs(value)) || subdivisions % 256 == 0) {
            auto [v, e] = totals();
            value = v;
            error = e;
            running_error = e;
        }
    }
    return {value, error, static_cast<int>(heap.size())};
}

}  // namespace expspline
