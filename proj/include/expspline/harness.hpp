#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "expspline/catalog.hpp"
#include "expspline/frequency.hpp"
#include "expspline/hatbasis.hpp"
#include "expspline/spline4.hpp"

namespace expspline {

enum class FrequencyKind { Xi, Pairs, Quads };

struct Config {
    nlohmann::ordered_json source;  // echoed into reports
    double a = 0.0;
    double b = 1.0;
    std::vector<Partition> grids;
    FrequencyKind kind = FrequencyKind::Xi;
    std::vector<double> xi{0.0};  // one value, or one per interval
    std::vector<FrequencyPair> pairs;
    std::vector<Quad> quads;
    std::optional<double> p;  // as given
    int order = 4;
    std::optional<TestFunction> function;
    std::optional<std::vector<double>> samples;
    std::optional<std::array<double, 2>> clamp;  // empty: exact end derivatives
    int dense_points = 10000;
};

// Throws ConfigError with the offending key.
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::string& path);

// "pi", "-pi/2", "2*pi", "0.5pi" or plain numbers.
double parse_real(const nlohmann::json& value, const std::string& key);

// Hat pairs of an order-2 configuration on a grid.
std::vector<FrequencyPair> pairs_for(const Config& config, const Partition& grid);
// Quadruples of an order-4 configuration; with `need_weight`, reordered so a
// common p exists (ConfigError otherwise).
QuadFrequencySet quads_for(const Config& config, const Partition& grid, bool need_weight);
// p used by certificates: the given value, else the one found for the quadruples, else 0.
double weight_exponent(const Config& config, const QuadFrequencySet* quads = nullptr);

// 10^4 uniform points (or `uniform`), every knot, and 64 Chebyshev points per interval; sorted, unique.
std::vector<double> dense_grid(const Partition& grid, int uniform = 10000);

// sup over [t_j, t_{j+1}] of |prod_k (D - l_k) F| by uniform sampling from 2048
// points, doubling until the maximum changes by less than 1e-6 relative. When
// the value is at roundoff level of the terms summed, `kernel` is set and 0 returned.
struct OperatorSup {
    double value = 0.0;
    double term_scale = 0.0;
    bool kernel = false;
};
OperatorSup sup_operator(const TestFunction& f, const FrequencyVector& freqs, double a, double b);

struct VerifyRow {
    int n = 0;
    double delta = 0.0;
    double empirical_error = 0.0;
    double bound = 0.0;
    std::optional<double> ratio;  // empty when the bound is 0
    std::optional<double> norm_bound;
    double M0_max = 0.0;
    std::optional<double> M2_max;
    std::optional<double> c_factor;
    double max_LF = 0.0;
    bool kernel = false;
    bool pass = false;
    std::optional<double> d2_error;  // max |D_{l2} D_{l3} (F - s)|
    std::optional<double> d2_bound;
    std::optional<double> condition;
};

// Roundoff allowance when comparing a measured error against a bound:
// error <= bound + kRoundoffFloor (1 + max |F|).
inline constexpr double kRoundoffFloor = 1e-12;

struct VerifyReport {
    nlohmann::ordered_json config;
    int order = 4;
    std::string function;
    std::vector<VerifyRow> rows;
    bool pass() const;
};

// Needs an analytic function (ConfigError for samples).
VerifyReport run_verify(const Config& config);
VerifyRow verify_grid(const Config& config, const Partition& grid);

struct ConvergenceResult {
    VerifyReport report;
    double slope = 0.0;  // NaN for kernel studies
    bool kernel = false;
    std::array<double, 2> expected{};
    bool pass() const;
};

// Least-squares slope of log(error) against log(Delta). Needs >= 3 grids.
ConvergenceResult convergence_study(const Config& config);
double loglog_slope(const std::vector<double>& delta, const std::vector<double>& error);

std::string format_real(double v);
std::string emit_csv(const VerifyReport& report);
std::string emit_json(const VerifyReport& report);
std::string emit_json(const ConvergenceResult& result);

}  // namespace expspline
