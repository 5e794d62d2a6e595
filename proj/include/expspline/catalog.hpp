#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

namespace expspline {

// Analytic test function with closed-form derivatives of order 0..4.
class TestFunction {
public:
    using Evaluator = std::function<double(double t, int order)>;

    TestFunction(std::string name, Evaluator eval, std::optional<std::array<double, 2>> domain = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    double operator()(double t) const { return eval_(t, 0); }
    // Throws DomainError for order outside [0, 4].
    double derivative(double t, int order) const;
    std::array<double, 5> derivatives(double t) const;
    // Suggested domain, if the function has a natural one.
    const std::optional<std::array<double, 2>>& domain() const noexcept { return domain_; }

private:
    std::string name_;
    Evaluator eval_;
    std::optional<std::array<double, 2>> domain_;
};

TestFunction sine_function();
TestFunction cosine_function();
// e^{a t}
TestFunction exponential_function(double a = 1.0);
// t^k, 0 <= k <= 6
TestFunction monomial_function(int k);
// 1 / (1 + a t^2)
TestFunction runge_function(double a = 25.0);
// e^{-t^2}
TestFunction gauss_function();

// "sin", "cos", "exp", "exp:2", "t^3", "monomial:3", "runge", "runge:25", "gauss".
// Throws ConfigError for unknown names.
TestFunction make_test_function(const std::string& spec);

// max over n random points of |F^{(m)} - central difference of F^{(m-1)}| / (1 + |F^{(m)}|), m = 1..4.
double derivative_consistency(const TestFunction& f, double a, double b, int points = 64, unsigned seed = 7);

}  // namespace expspline
