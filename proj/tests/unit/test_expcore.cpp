#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "expspline/errors.hpp"
#include "expspline/exppoly.hpp"
#include "expspline/frequency.hpp"
#include "expspline/fundamental.hpp"
#include "expspline/identities.hpp"
#include "expspline/operators.hpp"
#include "expspline/quadrature.hpp"
#include "oracle_values.hpp"

using namespace expspline;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

FrequencyVector random_freqs(std::mt19937_64& rng, int size, double range) {
    std::uniform_real_distribution<double> u(-range, range);
    std::vector<double> f(size);
    for (double& x : f) x = u(rng);
    return FrequencyVector(f);
}

}  // namespace

TEST(Fundamental, ClosedForms) {
    EXPECT_DOUBLE_EQ(fundamental_eval({0, 0}, 2.5), 2.5);
    EXPECT_NEAR(fundamental_eval({1, -1}, 1.0), std::sinh(1.0), 1e-15);
    EXPECT_NEAR(fundamental_eval({2, -2, 0, 0}, 1.0), (std::sinh(2.0) - 2.0) / 8.0, 1e-15);
    EXPECT_NEAR(fundamental_eval({1, 1}, 1.0), std::numbers::e, 1e-15);
    EXPECT_NEAR(fundamental_eval({0}, 3.0), 1.0, 0.0);
    EXPECT_NEAR(fundamental_eval({0.7}, 2.0), std::exp(1.4), 1e-14);
    EXPECT_NEAR(fundamental_eval({0, 0, 0, 0}, 2.0), 8.0 / 6.0, 1e-15);
}

TEST(Fundamental, OracleValues) {
    EXPECT_LT(rel(fundamental_eval({1, -1}, 1.0), oracle::kPhiSinh1), 1e-15);
    EXPECT_LT(rel(fundamental_eval({2, -2, 0, 0}, 1.0), oracle::kPhiSym2), 1e-14);
    EXPECT_LT(rel(fundamental_eval({1, 1}, 1.0), oracle::kPhiDouble1), 1e-15);
    EXPECT_LT(rel(fundamental_eval({1, 1 + 1e-13}, 1.0), oracle::kPhiNearDouble), 1e-9);
    EXPECT_LT(std::abs(fundamental_eval({-3, 0.5, 2, 2.0001, 7}, 0.7) / oracle::kPhiMixed5 - 1), 1e-13);
    EXPECT_LT(std::abs(fundamental_derivative({-3, 0.5, 2, 2.0001, 7}, 0.7, 2) / oracle::kPhiMixed5D2 - 1), 1e-13);
    EXPECT_LT(std::abs(fundamental_eval({1.5, -0.25, 3}, -1.3) / oracle::kPhiNegT - 1), 1e-13);
    EXPECT_LT(std::abs(fundamental_eval({30, -20, 10, 10}, 2.0) / oracle::kPhiLarge - 1), 1e-13);
    EXPECT_LT(std::abs(fundamental_derivative({1, 2, -1, -2}, 0.6, 3) / oracle::kPhiQuadD3 - 1), 1e-13);
}

TEST(Fundamental, Derivatives) {
    EXPECT_NEAR(fundamental_derivative({0, 0}, 1.7, 1), 1.0, 1e-15);
    EXPECT_NEAR(fundamental_derivative({0, 0, 0, 0}, 2.0, 2), 2.0, 1e-14);
    for (auto pr : {std::pair{-3.0, 5.0}, std::pair{0.2, 2.0}, std::pair{-1.0, -1.0}}) {
        EXPECT_NEAR(fundamental_derivative({pr.first, pr.second}, 0.0, 1), 1.0, 1e-15);
    }
}

TEST(Fundamental, NormalizationAtZero) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int size = 1 + trial % 5;
        const FrequencyVector f = random_freqs(rng, size, 5.0);
        const int n = f.order();
        for (int k = 0; k <= n; ++k) {
            EXPECT_NEAR(fundamental_derivative(f, 0.0, k), k == n ? 1.0 : 0.0, 1e-12) << "k=" << k;
        }
        // Finite-difference check of the top derivative.
        if (n >= 1) {
            const double h = 1e-4;
            const double fd = (fundamental_derivative(f, h, n - 1) - fundamental_derivative(f, -h, n - 1)) / (2 * h);
            EXPECT_NEAR(fd, 1.0, 1e-6);
        }
    }
}

TEST(Fundamental, Positivity) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const FrequencyVector f = random_freqs(rng, 1 + trial % 6, 6.0);
        for (int k = 1; k <= 30; ++k) EXPECT_GT(fundamental_eval(f, 0.1 * k), 0.0);
    }
}

TEST(Fundamental, ConfluentContinuity) {
    for (double eps : {1e-4, 1e-7, 1e-10, 1e-13}) {
        EXPECT_LT(rel(fundamental_eval({2, 2 + eps, -1, -1 - eps}, 0.9), fundamental_eval({2, 2, -1, -1}, 0.9)), 0.1 * eps + 1e-14);
    }
}

TEST(Fundamental, Errors) {
    EXPECT_THROW(fundamental_eval(FrequencyVector{}, 1.0), DomainError);
    EXPECT_THROW(fundamental_eval({1, 2}, std::nan("")), DomainError);
    EXPECT_THROW(fundamental_eval({800, 0}, 2.0), RangeError);
    // The scaled form stays finite where the raw value overflows.
    EXPECT_NO_THROW(fundamental_scaled({800, 0}, 2.0));
    EXPECT_NEAR(fundamental_ratio({800, 0}, 2.0, {800, 0}, 1.999), std::exp(0.8), 1e-12 * std::exp(0.8));
}

TEST(Fundamental, Integrate) {
    EXPECT_NEAR(integrate_fundamental({0, 0}, 1.0), 0.5, 1e-15);
    EXPECT_LT(rel(integrate_fundamental({1, -1}, 1.0), oracle::kIntegrateSinh), 1e-15);
    EXPECT_LT(rel(integrate_fundamental({2, -1, 0.5}, 1.7), oracle::kIntegrateMixed), 1e-14);
    EXPECT_EQ(integrate_fundamental({3, -2}, 0.0), 0.0);
}

TEST(Frequency, Multiplicities) {
    const FrequencyVector f{1.0, 1.0 + 1e-12, -2.0, 3.0, -2.0};
    const auto m = f.multiplicities();
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(m[0].first, -2.0);
    EXPECT_EQ(m[0].second, 2);
    EXPECT_EQ(m[1].second, 2);
    EXPECT_EQ(m[2].second, 1);
    EXPECT_EQ(f.multiplicities(), f.multiplicities());
    EXPECT_THROW(FrequencyVector({1.0, std::numeric_limits<double>::infinity()}), DomainError);
}

TEST(Frequency, Transforms) {
    const auto s = transform({0, 0}, TransformKind::Shift, 1.0);
    EXPECT_EQ(s.image, (FrequencyVector{1, 1}));
    EXPECT_NEAR(s.lhs(1.0), std::numbers::e, 1e-15);
    EXPECT_NEAR(s.rhs(1.0), std::numbers::e, 1e-15);
    const auto r = transform({1, -1}, TransformKind::Reflect);
    EXPECT_NEAR(r.lhs(1.0), -std::sinh(1.0), 1e-15);
    EXPECT_NEAR(r.rhs(1.0), -std::sinh(1.0), 1e-15);
    const auto c = transform({1, -1}, TransformKind::Scale, 2.0);
    EXPECT_NEAR(c.lhs(0.5), std::sinh(1.0), 1e-15);
    EXPECT_NEAR(c.rhs(0.5), std::sinh(1.0), 1e-15);
}

TEST(Frequency, TransformIdentitiesRandom) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const FrequencyVector f = random_freqs(rng, 1 + trial % 5, 4.0);
        const double t = u(rng);
        for (auto kind : {TransformKind::Shift, TransformKind::Reflect, TransformKind::Scale}) {
            const double param = kind == TransformKind::Scale ? 0.25 + std::abs(u(rng)) : u(rng);
            const auto tr = transform(f, kind, param);
            const double lhs = tr.lhs(t);
            EXPECT_LE(std::abs(lhs - tr.rhs(t)), 1e-12 * std::max(std::abs(lhs), 1e-300) + 1e-300);
        }
    }
}

TEST(Operators, Apply) {
    const double t = 0.8;
    const std::array<double, 5> sd{std::sin(t), std::cos(t), -std::sin(t), -std::cos(t), std::sin(t)};
    EXPECT_NEAR(operator_apply({0, 0, 0, 0}, sd), std::sin(t), 1e-15);
    for (double xi : {0.5, 1.0, 3.0}) {
        EXPECT_NEAR(operator_apply({xi, xi, -xi, -xi}, sd), (1 + xi * xi) * (1 + xi * xi) * std::sin(t), 1e-13);
    }
    const double rho = 2.5;
    const std::array<double, 5> fd{1.0, 2.0, 3.0, 4.0, 5.0};
    EXPECT_NEAR(operator_apply({0, 0, rho, -rho}, fd), 5.0 - rho * rho * 3.0, 1e-14);
    EXPECT_EQ(elementary_symmetric({1, 2, 3}), (std::vector<double>{1, 6, 11, 6}));
    EXPECT_EQ(operator_coefficients({1, 2}), (std::vector<double>{2, -3, 1}));
}

TEST(Operators, AnnihilatesFundamental) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const FrequencyVector f = random_freqs(rng, 2 + trial % 4, 3.0);
        const ExpPolynomial phi = fundamental_exppoly(f);
        EXPECT_LT(operator_apply(f, phi).max_coefficient_difference(ExpPolynomial{}), 1e-9);
    }
}

TEST(ExpPoly, LoweringIdentity) {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const FrequencyVector f = random_freqs(rng, 1 + trial % 4, 3.0);
        const double extra = u(rng);
        const ExpPolynomial big = fundamental_exppoly(f.appended(extra));
        const ExpPolynomial small = fundamental_exppoly(f);
        const ExpPolynomial lowered = big.lowered(extra);
        for (double t : {-1.0, 0.0, 0.4, 1.3}) EXPECT_NEAR(lowered(t), small(t), 1e-8 * (1 + std::abs(small(t))));
        for (double t : {0.3, 1.1}) EXPECT_NEAR(big(t), fundamental_eval(f.appended(extra), t), 1e-8 * (1 + std::abs(big(t))));
    }
}

TEST(ExpPoly, TermsUniqueAndExactDerivative) {
    const ExpPolynomial p({{1.0, 0, 2.0}, {1.0, 0, 3.0}, {-1.0, 2, 1.0}});
    ASSERT_EQ(p.terms().size(), 2u);
    const ExpPolynomial d = p.derivative();
    const double t = 0.7;
    EXPECT_NEAR(d(t), 5.0 * std::exp(t) + (2 * t - t * t) * std::exp(-t), 1e-14);
}

TEST(ExpPoly, SignChanges) {
    EXPECT_EQ(count_sign_changes(ExpPolynomial({{1.0, 0, 0.5}, {-1.0, 0, -0.5}}), -1, 1, 1000), 1);
    EXPECT_EQ(count_sign_changes(ExpPolynomial({{1.0, 0, 1.0}, {0.0, 0, -2.0}}), 0, 2, 1000), 1);
}

TEST(ExpPoly, ZeroCountBound) {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 120; ++trial) {
        const FrequencyVector f = random_freqs(rng, 4, 2.0);
        std::vector<ExpTerm> terms;
        for (const ExpTerm& b : confluent_basis(f)) terms.push_back({b.mu, b.s, u(rng)});
        const ExpPolynomial p(terms);
        if (p.is_zero()) continue;
        EXPECT_LE(count_sign_changes(p, -5, 5, 4000), 3);
    }
}

TEST(Identities, CrossIntegral) {
    EXPECT_NEAR(weighted_cross_integral(0, 0, 0, 1.0), -1.0 / 6.0, 1e-15);
    EXPECT_LT(rel(weighted_cross_integral(1, -1, 0, 1.0), oracle::kCrossSinh), 1e-15);
    EXPECT_LT(rel(weighted_cross_integral(-2, 0.5, 1.5, 0.8), oracle::kCrossWeighted), 1e-14);
    EXPECT_EQ(weighted_cross_integral(2, 3, 1, 0.0), 0.0);
}

TEST(Identities, SquareIntegrals) {
    const SquareIntegrals poly = weighted_square_integrals(0, 0, 0, 1.0);
    EXPECT_NEAR(poly.left, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(poly.right, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(poly.lin_left, 0.5, 1e-15);
    EXPECT_NEAR(poly.lin_right, -0.5, 1e-15);
    EXPECT_LT(rel(weighted_square_integrals(1, -1, 0, 1.0).left, oracle::kSquareLeftSinh), 1e-15);
    const SquareIntegrals w = weighted_square_integrals(-2, 0.5, 1.5, 0.8);
    EXPECT_LT(rel(w.left, oracle::kSquaresWeighted[0]), 1e-14);
    EXPECT_LT(rel(w.right, oracle::kSquaresWeighted[1]), 1e-14);
    EXPECT_LT(rel(w.lin_left, oracle::kSquaresWeighted[2]), 1e-14);
    EXPECT_LT(rel(w.lin_right, oracle::kSquaresWeighted[3]), 1e-14);
}

TEST(Identities, Convolution) {
    const auto a = convolution_check({0}, {0}, 1.0);
    EXPECT_NEAR(a.lhs, 1.0, 1e-14);
    EXPECT_NEAR(a.rhs, 1.0, 1e-15);
    const auto b = convolution_check({1, -1}, {0, 0}, 1.0);
    EXPECT_NEAR(b.lhs, b.rhs, 1e-9);
    EXPECT_NEAR(b.rhs, fundamental_eval({1, -1, 0, 0}, 1.0), 1e-15);
    const auto c = convolution_check({2}, {-2, 0}, 0.0);
    EXPECT_EQ(c.lhs, 0.0);
    EXPECT_EQ(c.rhs, 0.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> y(0.1, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        const FrequencyVector fa = random_freqs(rng, 1 + trial % 4, 3.0);
        const FrequencyVector fb = random_freqs(rng, 1 + (trial / 4) % 4, 3.0);
        const auto r = convolution_check(fa, fb, y(rng));
        EXPECT_LE(std::abs(r.lhs - r.rhs), 1e-8 * (1 + std::abs(r.rhs)));
    }
}

TEST(Quadrature, ErrorEstimateContract) {
    const QuadratureRule rule;
    for (auto f : std::vector<Integrand>{[](double t) { return std::exp(t); }, [](double t) { return std::sqrt(t); },
                                         [](double t) { return std::sin(30 * t); }}) {
        const QuadratureResult r = integrate(f, 0.0, 2.0, rule);
        EXPECT_LE(r.error, std::max(rule.abs_tol, rule.rel_tol * std::abs(r.value)));
    }
    EXPECT_NEAR(integrate([](double t) { return std::exp(t); }, 0.0, 2.0).value, std::exp(2.0) - 1, 1e-12);
    const double bp[] = {0.5};
    EXPECT_NEAR(integrate([](double t) { return std::abs(t - 0.5); }, 0.0, 1.0, {}, bp).value, 0.25, 1e-14);
    QuadratureRule tight{0.0, 0.0, 8};
    EXPECT_THROW(integrate([](double t) { return std::sqrt(t); }, 0.0, 1.0, tight), QuadratureError);
}
