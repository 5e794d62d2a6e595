#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>

#include "expspline/errors.hpp"
#include "expspline/fundamental.hpp"
#include "expspline/simd.hpp"

namespace expspline::simd {

namespace {

// -1: follow the environment and the CPU.
std::atomic<int> g_forced{-1};

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void check_sizes(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": length mismatch (" << a << " vs " << b << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

const char* isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return avx2::compiled() && cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() noexcept {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Isa>(forced);
    static const Isa from_env = [] {
        const char* env = std::getenv("EXPSPLINE_SIMD");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        return detected_isa();
    }();
    return from_env;
}

void set_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) throw DomainError("avx2 kernels are not available on this machine");
    g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() noexcept { g_forced.store(-1, std::memory_order_relaxed); }

ExpansionPlan make_plan(std::span<const double> nodes, std::span<const double> coeffs, int order) {
    const int n = static_cast<int>(nodes.size());
    if (n < 1 || n > kMaxNodes) throw DomainError("expansion needs between 1 and 16 nodes");
    check_sizes(nodes.size(), coeffs.size(), "make_plan");
    if (order < 0 || order > 8) throw DomainError("expansion derivative order must be in [0, 8]");
    for (double x : nodes) {
        if (!std::isfinite(x)) throw DomainError("non-finite expansion node");
    }
    ExpansionPlan plan;
    plan.nodes.assign(nodes.begin(), nodes.end());
    plan.order = order;
    plan.xmax = *std::max_element(nodes.begin(), nodes.end());
    plan.spread = plan.xmax - *std::min_element(nodes.begin(), nodes.end());
    plan.g.assign(static_cast<std::size_t>(n) * n, 0.0);
    // h[r] = h_r(x_0..x_q), updated as q grows.
    std::vector<double> h(order + 1, 0.0);
    h[0] = 1.0;
    for (int q = 0; q < n && q <= order; ++q) {
        for (int r = 1; r <= order; ++r) h[r] += nodes[q] * h[r - 1];
        for (int k = q; k < n; ++k) plan.g[q * n + k] = coeffs[k] * h[order - q];
    }
    return plan;
}

void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out) {
    check_sizes(s.size(), out.size(), "expansion_eval");
    for (double v : s) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("expansion_eval needs finite s >= 0");
    }
    if (active_isa() == Isa::Avx2) {
        avx2::expansion_eval(plan, s, out);
    } else {
        scalar::expansion_eval(plan, s, out);
    }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    check_sizes(a.size(), b.size(), "max_abs_diff");
    return active_isa() == Isa::Avx2 ? avx2::max_abs_diff(a, b) : scalar::max_abs_diff(a, b);
}

namespace scalar {

void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out) {
    const int n = static_cast<int>(plan.nodes.size());
    const int qmax = std::min(plan.order, n - 1);
    std::array<double, kMaxNodes * kMaxNodes> b{};
    for (std::size_t i = 0; i < s.size(); ++i) {
        detail::fundamental_table_nonneg(plan.nodes.data(), n, s[i], b.data());
        double sum = 0.0;
        for (int q = 0; q <= qmax; ++q) {
            for (int k = q; k < n; ++k) sum += plan.g[q * n + k] * b[q * kMaxNodes + k];
        }
        out[i] = sum * std::exp(plan.xmax * s[i]);
    }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (std::isnan(d)) return d;
        m = std::max(m, d);
    }
    return m;
}

}  // namespace scalar

}  // namespace expspline::simd
