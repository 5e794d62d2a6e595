#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "expspline/errors.hpp"
#include "expspline/frequency.hpp"
#include "expspline/fundamental.hpp"
#include "expspline/simd.hpp"

using namespace expspline;
namespace sd = expspline::simd;

namespace {

bool have_avx2() { return sd::detected_isa() == sd::Isa::Avx2; }

struct IsaGuard {
    ~IsaGuard() { sd::reset_isa(); }
};

std::vector<double> eval_with(sd::Isa isa, const sd::ExpansionPlan& plan, const std::vector<double>& s) {
    IsaGuard guard;
    sd::set_isa(isa);
    std::vector<double> out(s.size());
    sd::expansion_eval(plan, s, out);
    return out;
}

// Direct sum through the public fundamental-solution API.
double reference(const std::vector<double>& nodes, const std::vector<double>& coeffs, int order, double s) {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const FrequencyVector f(std::vector<double>(nodes.begin(), nodes.begin() + k + 1));
        sum += coeffs[k] * fundamental_derivative(f, s, order);
    }
    return sum;
}

// Scale for roundoff: sum of |c_k Phi^{(m)}_k(s)|.
double magnitude(const std::vector<double>& nodes, const std::vector<double>& coeffs, int order, double s) {
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const FrequencyVector f(std::vector<double>(nodes.begin(), nodes.begin() + k + 1));
        sum += std::abs(coeffs[k] * fundamental_derivative(f, s, order));
    }
    return sum;
}

}  // namespace

TEST(Simd, ScalarMatchesReference) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> node(-4.0, 4.0), coef(-2.0, 2.0), arg(0.0, 1.5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 8;
        std::vector<double> nodes(n), coeffs(n);
        for (int k = 0; k < n; ++k) {
            nodes[k] = node(rng);
            coeffs[k] = coef(rng);
        }
        if (trial % 5 == 0 && n > 1) nodes[1] = nodes[0];  // repeated node
        const int order = trial % 4;
        std::vector<double> s(13);
        for (double& v : s) v = arg(rng);
        const auto plan = sd::make_plan(nodes, coeffs, order);
        const auto out = eval_with(sd::Isa::Scalar, plan, s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double scale = magnitude(nodes, coeffs, order, s[i]);
            EXPECT_NEAR(out[i], reference(nodes, coeffs, order, s[i]), 1e-13 * (1.0 + scale)) << "trial " << trial;
        }
    }
}

TEST(Simd, Avx2MatchesScalar) {
    if (!have_avx2()) GTEST_SKIP() << "no avx2 on this machine";
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> node(-6.0, 6.0), coef(-3.0, 3.0), arg(0.0, 2.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 16;
        std::vector<double> nodes(n), coeffs(n);
        for (int k = 0; k < n; ++k) {
            nodes[k] = node(rng);
            coeffs[k] = coef(rng);
        }
        const int order = trial % 5;
        // Lengths that are not multiples of the vector width exercise the tail.
        std::vector<double> s(1 + trial % 11);
        for (double& v : s) v = arg(rng);
        s[0] = 0.0;
        const auto plan = sd::make_plan(nodes, coeffs, order);
        const auto a = eval_with(sd::Isa::Scalar, plan, s);
        const auto b = eval_with(sd::Isa::Avx2, plan, s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double scale = magnitude(nodes, coeffs, order, s[i]);
            EXPECT_NEAR(a[i], b[i], 1e-13 * (1.0 + scale)) << "trial " << trial << " s=" << s[i];
        }
    }
}

TEST(Simd, Avx2LargeArguments) {
    if (!have_avx2()) GTEST_SKIP() << "no avx2 on this machine";
    const std::vector<double> nodes{-20.0, -20.0, 20.0, 20.0};
    const std::vector<double> coeffs{1.0, -0.5, 0.25, 2.0};
    std::vector<double> s;
    for (int i = 0; i <= 30; ++i) s.push_back(0.1 * i);
    const auto plan = sd::make_plan(nodes, coeffs, 2);
    const auto a = eval_with(sd::Isa::Scalar, plan, s);
    const auto b = eval_with(sd::Isa::Avx2, plan, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        ASSERT_TRUE(std::isfinite(b[i]));
        EXPECT_NEAR(b[i], a[i], 1e-13 * std::max(1.0, std::abs(a[i])));
    }
}

TEST(Simd, MaxAbsDiff) {
    std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    std::vector<double> b{1.0, 2.5, 3.0, 1.0, 5.0, 6.0, 7.25};
    for (sd::Isa isa : {sd::Isa::Scalar, sd::Isa::Avx2}) {
        if (isa == sd::Isa::Avx2 && !have_avx2()) continue;
        IsaGuard guard;
        sd::set_isa(isa);
        EXPECT_EQ(sd::max_abs_diff(a, b), 3.0) << sd::isa_name(isa);
        EXPECT_EQ(sd::max_abs_diff(std::vector<double>{}, std::vector<double>{}), 0.0);
        // Tail element only.
        auto c = a;
        c[6] = -3.0;
        EXPECT_EQ(sd::max_abs_diff(a, c), 10.0);
        auto d = a;
        d[5] = std::numeric_limits<double>::quiet_NaN();
        EXPECT_TRUE(std::isnan(sd::max_abs_diff(a, d))) << sd::isa_name(isa);
        d = a;
        d[1] = std::numeric_limits<double>::quiet_NaN();
        EXPECT_TRUE(std::isnan(sd::max_abs_diff(d, a))) << sd::isa_name(isa);
    }
}

TEST(Simd, KernelsAgreeOnMaxAbsDiff) {
    if (!have_avx2()) GTEST_SKIP() << "no avx2 on this machine";
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int len : {0, 1, 3, 4, 5, 8, 17, 1001}) {
        std::vector<double> a(len), b(len);
        for (int i = 0; i < len; ++i) {
            a[i] = g(rng);
            b[i] = g(rng);
        }
        EXPECT_EQ(sd::scalar::max_abs_diff(a, b), sd::avx2::max_abs_diff(a, b)) << len;
    }
}

TEST(Simd, InputValidation) {
    const std::vector<double> nodes{0.0, 1.0};
    const std::vector<double> coeffs{1.0, 1.0};
    EXPECT_THROW(sd::make_plan(std::vector<double>{}, std::vector<double>{}, 0), DomainError);
    EXPECT_THROW(sd::make_plan(nodes, std::vector<double>{1.0}, 0), DomainError);
    EXPECT_THROW(sd::make_plan(nodes, coeffs, -1), DomainError);
    EXPECT_THROW(sd::make_plan(nodes, coeffs, 9), DomainError);
    EXPECT_THROW(sd::make_plan(std::vector<double>(17, 0.0), std::vector<double>(17, 1.0), 0), DomainError);
    EXPECT_THROW(sd::make_plan(std::vector<double>{0.0, std::nan("")}, coeffs, 0), DomainError);
    const auto plan = sd::make_plan(nodes, coeffs, 1);
    std::vector<double> out(2);
    EXPECT_THROW(sd::expansion_eval(plan, std::vector<double>{0.5}, out), DomainError);
    EXPECT_THROW(sd::expansion_eval(plan, std::vector<double>{0.5, -0.1}, out), DomainError);
    EXPECT_THROW(sd::expansion_eval(plan, std::vector<double>{0.5, std::nan("")}, out), DomainError);
    EXPECT_THROW(sd::max_abs_diff(std::vector<double>{1.0}, std::vector<double>{}), DomainError);
}

TEST(Simd, ForcingAndReset) {
    {
        IsaGuard guard;
        sd::set_isa(sd::Isa::Scalar);
        EXPECT_EQ(sd::active_isa(), sd::Isa::Scalar);
    }
    if (have_avx2()) {
        IsaGuard guard;
        sd::set_isa(sd::Isa::Avx2);
        EXPECT_EQ(sd::active_isa(), sd::Isa::Avx2);
        EXPECT_TRUE(sd::avx2::compiled());
    } else {
        EXPECT_THROW(sd::set_isa(sd::Isa::Avx2), DomainError);
    }
    EXPECT_STREQ(sd::isa_name(sd::Isa::Scalar), "scalar");
    EXPECT_STREQ(sd::isa_name(sd::Isa::Avx2), "avx2");
}

// Also registered as a separate ctest entry with EXPSPLINE_SIMD=scalar.
TEST(SimdEnv, FollowsEnvironment) {
    sd::reset_isa();
    const char* env = std::getenv("EXPSPLINE_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        EXPECT_EQ(sd::active_isa(), sd::Isa::Scalar);
    } else {
        EXPECT_EQ(sd::active_isa(), sd::detected_isa());
    }
}
