#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "expspline/catalog.hpp"
#include "expspline/errbound2.hpp"
#include "expspline/errors.hpp"
#include "expspline/hatbasis.hpp"
#include "oracle_values.hpp"

using namespace expspline;

TEST(Omega, Values) {
    EXPECT_NEAR(omega_eval(0, 0, 0, 1, 0.5), 0.125, 1e-16);
    EXPECT_NEAR(omega_eval(1, -1, 0, 1, 0.5), 1 - 2 * std::sinh(0.5) / std::sinh(1.0), 1e-15);
    EXPECT_NEAR(omega_eval(1, -1, 0, 1, 0.5), oracle::kOmegaSinh, 1e-15);
    EXPECT_NEAR(omega_eval(-3, 2, 0, 0.8, 0.3), oracle::kOmegaMixed, 1e-15);
    EXPECT_NEAR(omega_eval(0, 2.5, -1, 0.5, 0.1), oracle::kOmegaOneZero, 1e-15);
    EXPECT_NEAR(omega_eval(1.5, 1.5, 0, 2, 1.2), oracle::kOmegaDouble, 1e-14);
    EXPECT_NEAR(omega_eval(-30, 1, 0, 1, 0.9), oracle::kOmegaSteep, 1e-15);
    EXPECT_EQ(omega_eval(3, -2, 0.5, 1.5, 0.5), 0.0);
    EXPECT_THROW(omega_eval(0, 0, 1, 1, 1), DomainError);
    EXPECT_THROW(omega_eval(0, 0, 0, 1, 1.5), DomainError);
}

TEST(Omega, BoundaryPositivityAndOde) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double len = 0.1 + 2.9 * u(rng);
        double l0 = (6.0 / len) * (2 * u(rng) - 1);
        double l1 = (6.0 / len) * (2 * u(rng) - 1);
        if (l0 > l1) std::swap(l0, l1);
        const double a = 2 * u(rng) - 1;
        const double b = a + len;
        EXPECT_LE(std::abs(omega_eval(l0, l1, a, b, a)), 1e-12);
        EXPECT_LE(std::abs(omega_eval(l0, l1, a, b, b)), 1e-12);
        for (int k = 1; k < 10; ++k) {
            const double t = a + len * k / 10.0;
            const double w = omega_eval(l0, l1, a, b, t);
            EXPECT_GT(w, 0.0);
            const double h = 1e-3 * len;
            auto d = [&](double s) {
                const double wp = omega_eval(l0, l1, a, b, t + s);
                const double wm = omega_eval(l0, l1, a, b, t - s);
                return std::pair{(wp - wm) / (2 * s), (wp - 2 * w + wm) / (s * s)};
            };
            const auto [d1h, d2h] = d(h);
            const auto [d1q, d2q] = d(h / 2);
            const double d1 = (4 * d1q - d1h) / 3;
            const double d2 = (4 * d2q - d2h) / 3;
            EXPECT_NEAR(d2 - (l0 + l1) * d1 + l0 * l1 * w, -1.0, 1e-6);
        }
    }
}

TEST(Green, Values) {
    EXPECT_NEAR(green_eval(0, 0, 0, 1, 0.5, 0.5), -0.25, 1e-16);
    EXPECT_NEAR(green_eval(0, 0, 0, 1, 0.75, 0.25), -0.25 * 0.25, 1e-16);
    EXPECT_EQ(green_eval(2, -1, 0, 1, 0.4, 0.0), 0.0);
    EXPECT_NEAR(green_diagonal(0, 0, 0, 1, 0.3), -0.21, 1e-16);
    // Fig. 6 family: Omega <= |G(t,t)| (b - a) <= t (1 - t).
    for (int k = 1; k < 100; ++k) {
        const double t = k / 100.0;
        const double g = std::abs(green_diagonal(-30, 1, 0, 1, t));
        EXPECT_LE(omega_eval(-30, 1, 0, 1, t), g * (1 + 1e-12));
        EXPECT_LE(g, t * (1 - t) * (1 + 1e-12));
    }
}

TEST(Green, OmegaByQuadrature) {
    EXPECT_NEAR(omega_via_green(0, 0, 0, 1, 0.5), 0.125, 1e-12);
    EXPECT_NEAR(omega_via_green(1, -1, 0, 1, 0.5), oracle::kOmegaSinh, 1e-10);
    EXPECT_NEAR(omega_via_green(-3, 2, 0, 0.8, 0.3), omega_eval(-3, 2, 0, 0.8, 0.3), 1e-9);
}

TEST(Green, QuarterAndDominance) {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        double l0 = -10 + 20 * u(rng);
        double l1 = -10 + 20 * u(rng);
        if (l0 > l1) std::swap(l0, l1);
        const double a = u(rng);
        const double len = 0.05 + 2 * u(rng);
        const double t = a + len * u(rng);
        const double g = len * std::abs(green_diagonal(l0, l1, a, a + len, t));
        EXPECT_LE(g, 0.25 * len * len * (1 + 1e-12));
        if (l0 <= 0 && l1 >= 0) { EXPECT_LE(omega_eval(l0, l1, a, a + len, t), g * (1 + 1e-12) + 1e-300); }
    }
}

TEST(Mstar, Values) {
    EXPECT_EQ(mstar(0), 0.125);
    EXPECT_NEAR(mstar(2), oracle::kMstar2, 1e-16);
    EXPECT_EQ(mstar(-2), mstar(2));
    EXPECT_NEAR(mstar(0.5), oracle::kMstarHalf, 1e-16);
    EXPECT_NEAR(mstar(40), oracle::kMstar40, 1e-18);
    EXPECT_NEAR(mstar(1e-6), 0.125, 1e-12);
    EXPECT_TRUE(std::isfinite(mstar(5000)));
}

TEST(MConstant, Values) {
    const IntervalBoundData poly = M_constant(0, 0, 0, 1);
    EXPECT_NEAR(poly.M, 0.125, 1e-15);
    EXPECT_NEAR(poly.t_max, 0.5, 1e-9);
    EXPECT_NEAR(M_constant(2, -2, 0, 1).M, oracle::kMstar2, 1e-15);
    EXPECT_NEAR(maximize_omega(2, -2, 0, 1).M, oracle::kMstar2, 1e-10);
    const IntervalBoundData mixed = M_constant(-1, 3, 0, 1);
    EXPECT_LT(mixed.M, 0.25);
    EXPECT_NEAR(mixed.M, oracle::kMNonsym, 1e-12);
    EXPECT_NEAR(mixed.t_max, oracle::kMNonsymAt, 1e-6);
    const IntervalBoundData pos = M_constant(0.3, 2.2, 1, 1.9);
    EXPECT_NEAR(pos.M, oracle::kMPositive, 1e-12);
    EXPECT_NEAR(pos.t_max, oracle::kMPositiveAt, 1e-6);
    EXPECT_THROW(M_constant(0, 0, 1, 0), DomainError);
}

TEST(MConstant, SymmetricIdentityAndEstimate) {
    for (double xi : {0.1, 1.0, 3.0, 12.0}) {
        for (double len : {0.2, 1.0, 2.5}) {
            const IntervalBoundData d = maximize_omega(-xi, xi, 1.0, 1.0 + len);
            EXPECT_NEAR(d.M, len * len * mstar(xi * len), 1e-10 * len * len);
            EXPECT_LE(d.M, len * len / 8 * (1 + 1e-12));
            for (int k = 1; k < 20; ++k) {
                const double t = 1.0 + len * k / 20.0;
                EXPECT_LE(omega_eval(-xi, xi, 1.0, 1.0 + len, t), 0.5 * (t - 1.0) * (1.0 + len - t) * (1 + 1e-12));
            }
        }
    }
}

TEST(MConstant, InvariantsRandom) {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        double l0 = -6 + 12 * u(rng);
        double l1 = -6 + 12 * u(rng);
        if (l0 > l1) std::swap(l0, l1);
        const double a = u(rng);
        const double b = a + 0.1 + 1.5 * u(rng);
        const IntervalBoundData d = M_constant(l0, l1, a, b);
        EXPECT_GT(d.M, 0.0);
        EXPECT_GT(d.t_max, a);
        EXPECT_LT(d.t_max, b);
        if (l0 <= 0 && l1 >= 0) { EXPECT_LE(d.M, 0.25 * (b - a) * (b - a)); }
    }
}

TEST(MConstant, PositivePairsGrow) {
    // Not bounded by a multiple of (b - a)^2 for positive pairs: the ratio grows with the width.
    double prev = 0.0;
    for (double len : {1.0, 2.0, 4.0, 8.0}) {
        const double r = M_constant(1.0, 2.0, 0, len).M / (len * len);
        EXPECT_GT(r, prev);
        prev = r;
    }
}

TEST(Interp2Bound, Values) {
    const HatBasis poly(Partition::uniform(0, 1, 5), std::vector<FrequencyPair>(4, {0, 0}));
    const std::vector<double> ones(4, 1.0);
    EXPECT_NEAR(interp2_error_bound(poly, ones), 0.25 * 0.25 / 8, 1e-16);
    const HatBasis sym(Partition({0, 1}), {{-2, 2}});
    EXPECT_NEAR(interp2_error_bound(sym, std::vector<double>{1.0}), oracle::kMstar2, 1e-15);
    EXPECT_EQ(interp2_error_bound(sym, std::vector<double>{0.0}), 0.0);
    EXPECT_THROW(interp2_error_bound(sym, ones), DomainError);
    EXPECT_THROW(interp2_error_bound(sym, std::vector<double>{-1.0}), DomainError);
}

TEST(Interp2Bound, Soundness) {
    const struct {
        TestFunction f;
        double a, b;
        FrequencyPair pr;
    } cases[] = {{sine_function(), 0, 3.14159, {-1, 1}}, {runge_function(), -1, 1, {-2, 2}},
                 {gauss_function(), -2, 2, {-0.5, 3}}, {exponential_function(0.7), 0, 2, {0.2, 0.4}}};
    for (const auto& c : cases) {
        for (int n : {5, 9, 17}) {
            const HatBasis basis(Partition::uniform(c.a, c.b, n), std::vector<FrequencyPair>(n - 1, c.pr));
            std::vector<double> v;
            for (double t : basis.partition().knots()) v.push_back(c.f(t));
            const SplineOrder2 s = interpolate2(basis, v);
            std::vector<double> lf(n - 1, 0.0);
            double err = 0.0;
            for (int j = 0; j < n - 1; ++j) {
                for (int k = 0; k <= 400; ++k) {
                    const double t = basis.partition().knot(j) + basis.partition().length(j) * k / 400.0;
                    const double l = c.f.derivative(t, 2) - (c.pr.l0 + c.pr.l1) * c.f.derivative(t, 1) + c.pr.l0 * c.pr.l1 * c.f(t);
                    lf[j] = std::max(lf[j], std::abs(l));
                    err = std::max(err, std::abs(c.f(t) - s(t)));
                }
            }
            // 401 samples underestimate the sup of |L f|; a 1% allowance covers it.
            EXPECT_LE(err, 1.01 * interp2_error_bound(basis, lf) + 1e-14) << c.f.name() << " n=" << n;
        }
    }
}
