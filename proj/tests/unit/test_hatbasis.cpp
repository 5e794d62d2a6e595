#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "expspline/errors.hpp"
#include "expspline/hatbasis.hpp"

using namespace expspline;

namespace {

HatBasis uniform_basis(double a, double b, int n, FrequencyPair pr) {
    return HatBasis(Partition::uniform(a, b, n), std::vector<FrequencyPair>(n - 1, pr));
}

std::vector<double> sample(const Partition& part, int per_interval) {
    std::vector<double> t;
    for (int j = 0; j < part.intervals(); ++j) {
        for (int k = 0; k < per_interval; ++k) t.push_back(part.knot(j) + part.length(j) * k / per_interval);
    }
    t.push_back(part.back());
    return t;
}

}  // namespace

TEST(Partition, Basics) {
    const Partition p({0.0, 0.5, 2.0, 2.25});
    EXPECT_EQ(p.size(), 4);
    EXPECT_DOUBLE_EQ(p.mesh(), 1.5);
    EXPECT_EQ(p.locate(0.0), 0);
    EXPECT_EQ(p.locate(0.5), 1);
    EXPECT_EQ(p.locate(2.25), 2);
    EXPECT_THROW(Partition({0.0, 1.0, 1.0}), DomainError);
    EXPECT_THROW(Partition({0.0}), DomainError);
    EXPECT_THROW(p.locate(3.0), DomainError);
    const Partition u = Partition::uniform(0.0, 1.0, 5);
    EXPECT_EQ(u.back(), 1.0);
    EXPECT_DOUBLE_EQ(u.mesh(), 0.25);
}

TEST(MonotoneRadius, Cases) {
    EXPECT_EQ(monotone_radius(-1, 2), std::numeric_limits<double>::infinity());
    EXPECT_EQ(monotone_radius(0, 0), std::numeric_limits<double>::infinity());
    EXPECT_NEAR(monotone_radius(0.2, 2), std::log(10.0) / 1.8, 1e-15);
    EXPECT_NEAR(monotone_radius(0.2, 2), 1.2792, 5e-5);
    EXPECT_NEAR(monotone_radius(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(monotone_radius(-2, -0.2), monotone_radius(0.2, 2), 1e-15);
    EXPECT_NEAR(monotone_radius(1, 1 + 1e-9), 1.0, 1e-8);
    EXPECT_THROW(monotone_radius(2, 1), DomainError);
}

TEST(MonotoneRadius, PhiIncreasingInside) {
    for (auto pr : {FrequencyPair{0.2, 2}, FrequencyPair{1, 1}, FrequencyPair{-3, -0.5}, FrequencyPair{0.5, 4}}) {
        const double d = monotone_radius(pr.l0, pr.l1);
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= 200; ++k) {
            const double x = -d + 2 * d * k / 200.0;
            const double v = phi2_ratio(pr.l0, pr.l1, x, 1.0);
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(HatBasis, Construction) {
    EXPECT_NO_THROW(HatBasis(Partition({0, 1, 2}), {{0, 0}, {0, 0}}));
    EXPECT_NO_THROW(HatBasis(Partition({0, 0.5, 1}), {{-5, 5}, {-5, 5}}));
    EXPECT_THROW(HatBasis(Partition({0, 2}), {{0.2, 2}}), DomainError);
    EXPECT_NO_THROW(HatBasis(Partition({0, 2}), {{0.2, 2}}, {.allow_nonmonotone = true}));
    EXPECT_THROW(HatBasis(Partition({0, 1, 2}), {{0, 0}}), DomainError);
    EXPECT_THROW(HatBasis(Partition({0, 1}), {{1, 0}}), DomainError);
}

TEST(HatBasis, Values) {
    const HatBasis poly = uniform_basis(0, 2, 3, {0, 0});
    EXPECT_DOUBLE_EQ(hat_eval(poly, 1, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(hat_eval(poly, 0, 0.5), 0.5);
    const HatBasis sym = HatBasis(Partition({0, 0.5, 1}), {{-5, 5}, {-5, 5}});
    EXPECT_NEAR(hat_eval(sym, 1, 0.25), std::sinh(1.25) / std::sinh(2.5), 1e-15);
    EXPECT_NEAR(hat_eval(sym, 0, 0.25), std::sinh(1.25) / std::sinh(2.5), 1e-15);
    EXPECT_EQ(hat_eval(sym, 2, 0.25), 0.0);
    EXPECT_THROW(hat_eval(sym, 3, 0.25), DomainError);
    EXPECT_THROW(hat_eval(sym, 0, 1.5), DomainError);
}

TEST(HatBasis, CardinalityAndRange) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 7;
        std::vector<double> knots{-1.0};
        std::vector<FrequencyPair> pairs;
        for (int j = 1; j < n; ++j) {
            double l0 = -8 + 16 * u(rng);
            double l1 = -8 + 16 * u(rng);
            if (l0 > l1) std::swap(l0, l1);
            pairs.push_back({l0, l1});
            knots.push_back(knots.back() + std::min(1.5, 0.99 * monotone_radius(l0, l1)) * (0.05 + 0.95 * u(rng)));
        }
        const HatBasis basis(Partition(knots), pairs);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) EXPECT_EQ(basis(j, knots[i]), i == j ? 1.0 : 0.0);
        }
        for (double t : sample(basis.partition(), 40)) {
            for (int j = 0; j < n; ++j) {
                const double v = basis(j, t);
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
                const bool in_support = t >= knots[std::max(0, j - 1)] && t <= knots[std::min(n - 1, j + 1)];
                if (!in_support) { EXPECT_EQ(v, 0.0); }
            }
        }
    }
}

TEST(HatBasis, SumOfHats) {
    const HatBasis poly = uniform_basis(0, 3, 7, {0, 0});
    for (double t : sample(poly.partition(), 13)) EXPECT_NEAR(sum_hats(poly, t), 1.0, 1e-15);
    const HatBasis mixed = uniform_basis(0, 1, 3, {-5, 5});
    double mx = 0.0;
    for (int k = 0; k <= 1000; ++k) mx = std::max(mx, sum_hats(mixed, k / 1000.0));
    EXPECT_LE(mx, 1.0 + 1e-12);
    const HatBasis pos = uniform_basis(0, 2.4, 3, {0.2, 2});
    double over = 0.0;
    for (int k = 0; k <= 1000; ++k) over = std::max(over, sum_hats(pos, 2.4 * k / 1000.0));
    EXPECT_GT(over, 1.0);
    EXPECT_LE(over, 2.0);
}

TEST(HatBasis, PolynomialLimit) {
    const HatBasis poly = uniform_basis(0, 1, 5, {0, 0});
    const HatBasis near = uniform_basis(0, 1, 5, {-1e-7, 1e-7});
    for (double t : sample(poly.partition(), 17)) {
        for (int j = 0; j < 5; ++j) EXPECT_NEAR(near(j, t), poly(j, t), 1e-6);
    }
}

TEST(HatBasis, LargeArguments) {
    // lambda h near 900: the raw fundamental values overflow, the ratios do not.
    const HatBasis basis(Partition({0, 1, 2}), {{-900, 900}, {-900, 900}});
    EXPECT_NEAR(basis(1, 0.999), std::exp(-0.9), 1e-12);
    EXPECT_TRUE(std::isfinite(basis(0, 0.5)));
}

TEST(Interpolate2, Reproduction) {
    const HatBasis poly = uniform_basis(-1, 2, 7, {0, 0});
    const std::vector<double> ones(7, 1.0);
    const SplineOrder2 one = interpolate2(poly, ones);
    const SplineOrder2 id = interpolate2(poly, poly.partition().knots());
    for (double t : sample(poly.partition(), 9)) {
        EXPECT_NEAR(one(t), 1.0, 1e-15);
        EXPECT_NEAR(id(t), t, 1e-15);
    }
    const HatBasis sym = uniform_basis(0, 1, 5, {-5, 5});
    const SplineOrder2 u = interpolate2(sym, std::vector<double>(5, 1.0));
    for (int k = 0; k <= 1000; ++k) EXPECT_LE(u(k / 1000.0), 1.0 + 1e-15);
    // Knot values are reproduced exactly.
    const std::vector<double> v{0.3, -1.0, 2.0, 0.0, 5.5};
    const SplineOrder2 s = interpolate2(sym, v);
    for (int j = 0; j < 5; ++j) EXPECT_EQ(s(sym.partition().knot(j)), v[j]);
    EXPECT_THROW(interpolate2(sym, ones), DomainError);
}

TEST(Interpolate2, KernelFunction) {
    // e^t and e^{-t} lie in E(-1, 1) on every interval.
    const HatBasis basis = uniform_basis(-1, 2, 6, {-1, 1});
    std::vector<double> v;
    for (double t : basis.partition().knots()) v.push_back(2 * std::exp(t) - std::exp(-t));
    const SplineOrder2 s = interpolate2(basis, v);
    for (double t : sample(basis.partition(), 31)) {
        const double f = 2 * std::exp(t) - std::exp(-t);
        EXPECT_NEAR(s(t), f, 1e-13 * (1 + std::abs(f)));
    }
}

TEST(Interpolate2, QuasiBestApproximation) {
    // ||f - I f|| <= 3 ||f - g|| for every g in the span (sum |H_j| <= 2).
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const FrequencyPair pr = trial % 2 ? FrequencyPair{-2, 3} : FrequencyPair{0.3, 1.1};
        const HatBasis basis = uniform_basis(0, 2, 6, pr);
        const double a1 = u(rng), a2 = 3 * u(rng), a3 = u(rng);
        auto f = [&](double t) { return a1 * std::sin(a2 * t) + a3 * t * t; };
        std::vector<double> fv, gv;
        for (double t : basis.partition().knots()) {
            fv.push_back(f(t));
            gv.push_back(f(t) + 0.2 * u(rng));
        }
        const SplineOrder2 If = interpolate2(basis, fv);
        const SplineOrder2 g = interpolate2(basis, gv);
        double err_i = 0.0, err_g = 0.0;
        for (double t : sample(basis.partition(), 200)) {
            err_i = std::max(err_i, std::abs(f(t) - If(t)));
            err_g = std::max(err_g, std::abs(f(t) - g(t)));
        }
        EXPECT_LE(err_i, 3 * err_g * (1 + 1e-12));
    }
}
