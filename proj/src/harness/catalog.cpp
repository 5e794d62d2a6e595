#include "expspline/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "expspline/errors.hpp"

namespace expspline {

TestFunction::TestFunction(std::string name, Evaluator eval, std::optional<std::array<double, 2>> domain)
    : name_(std::move(name)), eval_(std::move(eval)), domain_(domain) {}

double TestFunction::derivative(double t, int order) const {
    if (order < 0 || order > 4) throw DomainError("test functions provide derivatives of order 0..4");
    return eval_(t, order);
}

std::array<double, 5> TestFunction::derivatives(double t) const {
    std::array<double, 5> d{};
    for (int m = 0; m < 5; ++m) d[m] = eval_(t, m);
    return d;
}

TestFunction sine_function() {
    return TestFunction("sin", [](double t, int m) {
        switch (m % 4) {
            case 0: return std::sin(t);
            case 1: return std::cos(t);
            case 2: return -std::sin(t);
            default: return -std::cos(t);
        }
    }, std::array<double, 2>{0.0, std::numbers::pi});
}

TestFunction cosine_function() {
    return TestFunction("cos", [](double t, int m) {
        switch (m % 4) {
            case 0: return std::cos(t);
            case 1: return -std::sin(t);
            case 2: return -std::cos(t);
            default: return std::sin(t);
        }
    }, std::array<double, 2>{0.0, std::numbers::pi});
}

TestFunction exponential_function(double a) {
    std::ostringstream name;
    name << "exp";
    if (a != 1.0) name << ":" << a;
    return TestFunction(name.str(), [a](double t, int m) { return std::pow(a, m) * std::exp(a * t); },
                        std::array<double, 2>{0.0, 1.0});
}

TestFunction monomial_function(int k) {
    if (k < 0 || k > 6) throw ConfigError("monomial degree must be in [0, 6]");
    return TestFunction("t^" + std::to_string(k), [k](double t, int m) {
        if (m > k) return 0.0;
        double c = 1.0;
        for (int i = 0; i < m; ++i) c *= k - i;
        return c * std::pow(t, k - m);
    }, std::array<double, 2>{0.0, 1.0});
}

TestFunction runge_function(double a) {
    std::ostringstream name;
    name << "runge";
    if (a != 25.0) name << ":" << a;
    return TestFunction(name.str(), [a](double t, int m) {
        const double u = 1.0 + a * t * t;
        switch (m) {
            case 0: return 1.0 / u;
            case 1: return -2.0 * a * t / (u * u);
            case 2: return (6.0 * a * a * t * t - 2.0 * a) / (u * u * u);
            case 3: return 24.0 * a * a * t * (1.0 - a * t * t) / (u * u * u * u);
            default: {
                const double at2 = a * t * t;
                return 24.0 * a * a * (5.0 * at2 * at2 - 10.0 * at2 + 1.0) / (u * u * u * u * u);
            }
        }
    }, std::array<double, 2>{-1.0, 1.0});
}

TestFunction gauss_function() {
    // d^m/dt^m e^{-t^2} = (-1)^m H_m(t) e^{-t^2}, H the physicists' Hermite polynomials.
    return TestFunction("gauss", [](double t, int m) {
        const double g = std::exp(-t * t);
        const double t2 = t * t;
        switch (m) {
            case 0: return g;
            case 1: return -2.0 * t * g;
            case 2: return (4.0 * t2 - 2.0) * g;
            case 3: return -(8.0 * t2 * t - 12.0 * t) * g;
            default: return (16.0 * t2 * t2 - 48.0 * t2 + 12.0) * g;
        }
    }, std::array<double, 2>{-2.0, 2.0});
}

namespace {

double parse_param(const std::string& spec, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) throw ConfigError("bad parameter in function '" + spec + "'");
    return v;
}

}  // namespace

TestFunction make_test_function(const std::string& spec) {
    std::string name = spec;
    std::string param;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        param = spec.substr(colon + 1);
    } else if (spec.size() > 2 && spec.compare(0, 2, "t^") == 0) {
        name = "monomial";
        param = spec.substr(2);
    }
    if (name == "sin" && param.empty()) return sine_function();
    if (name == "cos" && param.empty()) return cosine_function();
    if (name == "gauss" && param.empty()) return gauss_function();
    if (name == "exp") return exponential_function(param.empty() ? 1.0 : parse_param(spec, param));
    if (name == "runge") return runge_function(param.empty() ? 25.0 : parse_param(spec, param));
    if (name == "monomial" && !param.empty()) {
        const double k = parse_param(spec, param);
        if (k != std::floor(k)) throw ConfigError("monomial degree must be an integer");
        return monomial_function(static_cast<int>(k));
    }
    throw ConfigError("unknown test function '" + spec + "' (known: sin, cos, exp[:a], t^k, runge[:a], gauss)");
}

double derivative_consistency(const TestFunction& f, double a, double b, int points, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pick(a, b);
    const double step = 1e-4 * std::max(1.0, b - a);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double t = pick(rng);
        for (int m = 1; m <= 4; ++m) {
            // Fourth-order central difference of F^{(m-1)}.
            const double fd = (-f.derivative(t + 2 * step, m - 1) + 8.0 * f.derivative(t + step, m - 1) -
                               8.0 * f.derivative(t - step, m - 1) + f.derivative(t - 2 * step, m - 1)) /
                              (12.0 * step);
            const double exact = f.derivative(t, m);
            worst = std::max(worst, std::abs(fd - exact) / (1.0 + std::abs(exact)));
        }
    }
    return worst;
}

}  // namespace expspline
