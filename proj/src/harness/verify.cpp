#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "expspline/errbound2.hpp"
#include "expspline/errors.hpp"
#include "expspline/harness.hpp"
#include "expspline/operators.hpp"
#include "expspline/simd.hpp"

namespace expspline {

namespace {

constexpr int kSupStart = 2048;
constexpr int kSupMax = 1 << 17;
constexpr double kSupTol = 1e-6;
constexpr double kKernelTol = 1e-13;

// Re-throw a library error with the grid size prefixed, keeping its type.
template <class F>
auto with_context(int n, F&& body) -> decltype(body()) {
    const std::string ctx = "grid n = " + std::to_string(n) + ": ";
    try {
        return body();
    } catch (const ConfigError& e) {
        throw ConfigError(ctx + e.what());
    } catch (const DominanceError& e) {
        throw DominanceError(ctx + e.what(), e.interval(), e.t_value());
    } catch (const SingularSystemError& e) {
        throw SingularSystemError(ctx + e.what(), e.condition());
    } catch (const RangeError& e) {
        throw RangeError(ctx + e.what());
    } catch (const QuadratureError& e) {
        throw QuadratureError(ctx + e.what());
    } catch (const DomainError& e) {
        throw DomainError(ctx + e.what());
    }
}

std::array<double, 2> end_derivatives(const Config& config, const TestFunction& f) {
    if (config.clamp) return *config.clamp;
    return {f.derivative(config.a, 1), f.derivative(config.b, 1)};
}

}  // namespace

std::vector<double> dense_grid(const Partition& grid, int uniform) {
    std::vector<double> pts;
    pts.reserve(uniform + grid.size() + 64 * grid.intervals());
    const double a = grid.front();
    const double b = grid.back();
    for (int i = 0; i < uniform; ++i) pts.push_back(i + 1 == uniform ? b : a + (b - a) * i / (uniform - 1));
    for (double t : grid.knots()) pts.push_back(t);
    constexpr int kCheb = 64;
    for (int j = 0; j < grid.intervals(); ++j) {
        const double lo = grid.knot(j);
        const double hi = grid.knot(j + 1);
        for (int k = 0; k < kCheb; ++k) {
            const double x = std::cos(std::numbers::pi * (2 * k + 1) / (2.0 * kCheb));
            pts.push_back(std::clamp(0.5 * (lo + hi) + 0.5 * (hi - lo) * x, lo, hi));
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

OperatorSup sup_operator(const TestFunction& f, const FrequencyVector& freqs, double a, double b) {
    const std::vector<double> coeffs = operator_coefficients(freqs);
    const int arity = static_cast<int>(coeffs.size());
    if (arity > 5) throw DomainError("test functions provide derivatives up to order 4");
    auto sample = [&](int points, double& value, double& scale) {
        value = 0.0;
        scale = 0.0;
        for (int i = 0; i < points; ++i) {
            const double t = i + 1 == points ? b : a + (b - a) * i / (points - 1);
            const auto d = f.derivatives(t);
            double sum = 0.0;
            double mag = 0.0;
            for (int k = 0; k < arity; ++k) {
                sum += coeffs[k] * d[k];
                mag += std::abs(coeffs[k] * d[k]);
            }
            if (!std::isfinite(sum)) throw RangeError("L F is not finite at t = " + format_real(t));
            value = std::max(value, std::abs(sum));
            scale = std::max(scale, mag);
        }
    };
    OperatorSup out;
    int points = kSupStart;
    double value = 0.0;
    double scale = 0.0;
    sample(points, value, scale);
    while (points < kSupMax) {
        double next = 0.0;
        double next_scale = 0.0;
        sample(2 * points, next, next_scale);
        points *= 2;
        const bool stable = std::abs(next - value) <= kSupTol * std::max(next, kKernelTol * next_scale);
        value = next;
        scale = next_scale;
        if (stable) break;
    }
    out.term_scale = scale;
    if (value <= kKernelTol * scale) {
        out.kernel = true;
        out.value = 0.0;
        return out;
    }
    // Sampling approaches the sup from below.
    out.value = value * (1.0 + kSupTol);
    return out;
}

bool VerifyReport::pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

VerifyRow verify_grid(const Config& config, const Partition& grid) {
    if (!config.function) throw ConfigError("verification needs an analytic function (samples disable certificates)");
    const TestFunction& f = *config.function;
    return with_context(grid.size(), [&] {
        VerifyRow row;
        row.n = grid.size();
        row.delta = grid.mesh();
        std::vector<double> values;
        for (double t : grid.knots()) values.push_back(f(t));

        const std::vector<double> pts = dense_grid(grid, config.dense_points);
        std::vector<double> fv(pts.size());
        double fmax = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            fv[i] = f(pts[i]);
            fmax = std::max(fmax, std::abs(fv[i]));
        }
        std::vector<double> sv(pts.size());

        if (config.order == 4) {
            const QuadFrequencySet quads = quads_for(config, grid, true);
            const double p = weight_exponent(config, &quads);
            const auto ends = end_derivatives(config, f);
            const SplineOrder4 s = build_interpolant4(grid, quads, values, ends[0], ends[1]);
            row.condition = s.solve_info().condition;
            s.evaluate(pts, 0, sv);
            row.empirical_error = simd::max_abs_diff(fv, sv);

            bool kernel = true;
            for (int j = 0; j < grid.intervals(); ++j) {
                const Quad& q = quads[j];
                const OperatorSup sup = sup_operator(f, FrequencyVector{q[0], q[1], q[2], q[3]}, grid.knot(j), grid.knot(j + 1));
                row.max_LF = std::max(row.max_LF, sup.value);
                kernel = kernel && sup.kernel;
            }
            row.kernel = kernel;
            const BoundCertificate cert = error_bound4(grid, quads, p, row.max_LF);
            row.bound = cert.bound;
            row.norm_bound = cert.norm_bound;
            row.M0_max = cert.M0_max;
            row.M2_max = cert.M2_max;
            row.c_factor = cert.c_factor;

            // D_{l2} D_{l3} (F - s) on the same points.
            std::vector<double> s1(pts.size());
            std::vector<double> s2(pts.size());
            s.evaluate(pts, 1, s1);
            s.evaluate(pts, 2, s2);
            double d2 = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const Quad& q = quads[grid.locate(pts[i])];
                const double e0 = fv[i] - sv[i];
                const double e1 = f.derivative(pts[i], 1) - s1[i];
                const double e2 = f.derivative(pts[i], 2) - s2[i];
                d2 = std::max(d2, std::abs(e2 - (q[2] + q[3]) * e1 + q[2] * q[3] * e0));
            }
            row.d2_error = d2;
            row.d2_bound = second_order_error_bound(grid, quads, p, row.max_LF);
        } else {
            const HatBasis basis(grid, pairs_for(config, grid));
            const SplineOrder2 s = interpolate2(basis, values);
            for (std::size_t i = 0; i < pts.size(); ++i) sv[i] = s(pts[i]);
            row.empirical_error = simd::max_abs_diff(fv, sv);
            std::vector<double> max_lf(grid.intervals());
            bool kernel = true;
            for (int j = 0; j < grid.intervals(); ++j) {
                const FrequencyPair& pr = basis.pair(j);
                const OperatorSup sup = sup_operator(f, FrequencyVector{pr.l0, pr.l1}, grid.knot(j), grid.knot(j + 1));
                max_lf[j] = sup.value;
                row.max_LF = std::max(row.max_LF, sup.value);
                kernel = kernel && sup.kernel;
                row.M0_max = std::max(row.M0_max, M_constant(pr.l0, pr.l1, grid.knot(j), grid.knot(j + 1)).M);
            }
            row.kernel = kernel;
            row.bound = interp2_error_bound(basis, max_lf);
        }
        if (row.bound > 0.0) row.ratio = row.empirical_error / row.bound;
        row.pass = row.empirical_error <= row.bound + kRoundoffFloor * (1.0 + fmax);
        return row;
    });
}

VerifyReport run_verify(const Config& config) {
    if (!config.function) throw ConfigError("verification needs an analytic function (samples disable certificates)");
    VerifyReport report;
    report.config = config.source;
    report.order = config.order;
    report.function = config.function->name();
    for (const Partition& grid : config.grids) report.rows.push_back(verify_grid(config, grid));
    return report;
}

double loglog_slope(const std::vector<double>& delta, const std::vector<double>& error) {
    if (delta.size() != error.size() || delta.size() < 2) throw DomainError("slope needs at least two points");
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    const double n = static_cast<double>(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) {
        if (!(delta[i] > 0.0) || !(error[i] > 0.0)) throw DomainError("slope needs positive mesh sizes and errors");
        const double x = std::log(delta[i]);
        const double y = std::log(error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw DomainError("slope needs distinct mesh sizes");
    return (n * sxy - sx * sy) / den;
}

bool ConvergenceResult::pass() const { return kernel || (slope >= expected[0] && slope <= expected[1]); }

ConvergenceResult convergence_study(const Config& config) {
    if (config.grids.size() < 3) throw ConfigError("config key 'n': a convergence study needs at least 3 grid levels");
    ConvergenceResult result;
    result.report = run_verify(config);
    result.expected = config.order == 4 ? std::array<double, 2>{3.7, 4.3} : std::array<double, 2>{1.8, 2.2};
    result.kernel = std::all_of(result.report.rows.begin(), result.report.rows.end(), [](const VerifyRow& r) { return r.kernel; });
    if (result.kernel) {
        result.slope = std::numeric_limits<double>::quiet_NaN();
        return result;
    }
    std::vector<double> delta;
    std::vector<double> error;
    for (const VerifyRow& r : result.report.rows) {
        delta.push_back(r.delta);
        error.push_back(r.empirical_error);
    }
    result.slope = loglog_slope(delta, error);
    return result;
}

}  // namespace expspline
