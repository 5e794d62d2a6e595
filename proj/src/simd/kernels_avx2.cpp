#include <algorithm>
#include <array>
#include <cmath>

#include "expspline/fundamental.hpp"
#include "expspline/simd.hpp"

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#define EXPSPLINE_HAVE_AVX2 1
#define EXPSPLINE_AVX2 __attribute__((target("avx2,fma")))
#endif

namespace expspline::simd::avx2 {

#ifdef EXPSPLINE_HAVE_AVX2

namespace {

// e^x for four lanes. Cody-Waite reduction x = n ln2 + r, |r| <= ln2/2, then a
// degree-13 Taylor polynomial (truncation below 1e-17 relative). Lanes below
// -708.39 return 0 (no subnormal results), lanes above 709.78 return +inf.
EXPSPLINE_AVX2 inline __m256d exp_pd(__m256d x) {
    const __m256d hi = _mm256_set1_pd(709.78);
    const __m256d lo = _mm256_set1_pd(-708.39);
    const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    const __m256d over = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
    const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, _mm256_set1_pd(1.4426950408889634)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), xc);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

    static constexpr double c[14] = {1.0,
                                     1.0,
                                     1.0 / 2,
                                     1.0 / 6,
                                     1.0 / 24,
                                     1.0 / 120,
                                     1.0 / 720,
                                     1.0 / 5040,
                                     1.0 / 40320,
                                     1.0 / 362880,
                                     1.0 / 3628800,
                                     1.0 / 39916800,
                                     1.0 / 479001600,
                                     1.0 / 6227020800.0};
    __m256d p = _mm256_set1_pd(c[13]);
    for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[k]));

    // 2^n through the exponent field: n + 1023 lands in the low mantissa bits
    // after adding 2^52 + 2^51.
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);
    const __m256i bits = _mm256_castpd_si256(_mm256_add_pd(_mm256_add_pd(n, _mm256_set1_pd(1023.0)), magic));
    const __m256d two_n = _mm256_castsi256_pd(_mm256_slli_epi64(bits, 52));
    __m256d result = _mm256_mul_pd(p, two_n);
    result = _mm256_blendv_pd(result, _mm256_setzero_pd(), under);
    result = _mm256_blendv_pd(result, _mm256_set1_pd(HUGE_VAL), over);
    return _mm256_blendv_pd(result, x, nan_mask);
}

EXPSPLINE_AVX2 void eval_block(const ExpansionPlan& plan, const double* s, double* out) {
    const int n = static_cast<int>(plan.nodes.size());
    const int qmax = std::min(plan.order, n - 1);

    int squarings = 0;
    for (int l = 0; l < 4; ++l) squarings = std::max(squarings, detail::taylor_squarings(plan.spread, s[l]));
    const __m256d sv = _mm256_loadu_pd(s);
    const __m256d tau = _mm256_mul_pd(sv, _mm256_set1_pd(std::ldexp(1.0, -squarings)));

    __m256d y[kMaxNodes];
    __m256d z[kMaxNodes];
    for (int i = 0; i < n; ++i) {
        y[i] = _mm256_set1_pd(plan.nodes[i] - plan.xmax);
        z[i] = _mm256_mul_pd(y[i], tau);
    }

    __m256d b[kMaxNodes * kMaxNodes];
    __m256d hm[detail::kTaylorTerms + 1];
    double inv[detail::kTaylorTerms + kMaxNodes];
    for (int k = 0; k < detail::kTaylorTerms + kMaxNodes; ++k) inv[k] = detail::inverse_factorial(k);
    for (int i = 0; i < n; ++i) {
        b[i * kMaxNodes + i] = exp_pd(z[i]);
        hm[0] = _mm256_set1_pd(1.0);
        for (int m = 1; m <= detail::kTaylorTerms; ++m) hm[m] = _mm256_mul_pd(hm[m - 1], z[i]);
        __m256d tk = _mm256_set1_pd(1.0);
        for (int j = i + 1; j < n; ++j) {
            const int k = j - i;
            tk = _mm256_mul_pd(tk, tau);
            for (int m = 1; m <= detail::kTaylorTerms; ++m) hm[m] = _mm256_fmadd_pd(z[j], hm[m - 1], hm[m]);
            __m256d sum = _mm256_setzero_pd();
            for (int m = detail::kTaylorTerms; m >= 0; --m)
                sum = _mm256_fmadd_pd(hm[m], _mm256_set1_pd(inv[m + k]), sum);
            b[i * kMaxNodes + j] = _mm256_mul_pd(tk, sum);
        }
    }

    __m256d c[kMaxNodes * kMaxNodes];
    for (int level = 1; level <= squarings; ++level) {
        const __m256d tl = _mm256_mul_pd(tau, _mm256_set1_pd(std::ldexp(1.0, level)));
        for (int i = 0; i < n; ++i) {
            c[i * kMaxNodes + i] = exp_pd(_mm256_mul_pd(y[i], tl));
            for (int j = i + 1; j < n; ++j) {
                __m256d sum = _mm256_setzero_pd();
                for (int k = i; k <= j; ++k) sum = _mm256_fmadd_pd(b[i * kMaxNodes + k], b[k * kMaxNodes + j], sum);
                c[i * kMaxNodes + j] = sum;
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) b[i * kMaxNodes + j] = c[i * kMaxNodes + j];
        }
    }

    __m256d sum = _mm256_setzero_pd();
    for (int q = 0; q <= qmax; ++q) {
        for (int k = q; k < n; ++k) sum = _mm256_fmadd_pd(_mm256_set1_pd(plan.g[q * n + k]), b[q * kMaxNodes + k], sum);
    }
    const __m256d scale = exp_pd(_mm256_mul_pd(_mm256_set1_pd(plan.xmax), sv));
    _mm256_storeu_pd(out, _mm256_mul_pd(sum, scale));
}

EXPSPLINE_AVX2 double max_abs_diff_impl(const double* a, const double* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, d);
    }
    if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (std::isnan(d)) return d;
        result = std::max(result, d);
    }
    return result;
}

}  // namespace

bool compiled() noexcept { return true; }

void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out) {
    std::size_t i = 0;
    for (; i + 4 <= s.size(); i += 4) eval_block(plan, s.data() + i, out.data() + i);
    if (i < s.size()) {
        // Pad the tail with its last point.
        double ts[4];
        double to[4];
        for (int l = 0; l < 4; ++l) ts[l] = s[std::min(i + l, s.size() - 1)];
        eval_block(plan, ts, to);
        for (std::size_t l = 0; i + l < s.size(); ++l) out[i + l] = to[l];
    }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return max_abs_diff_impl(a.data(), b.data(), a.size());
}

#else

bool compiled() noexcept { return false; }

void expansion_eval(const ExpansionPlan& plan, std::span<const double> s, std::span<double> out) {
    scalar::expansion_eval(plan, s, out);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) { return scalar::max_abs_diff(a, b); }

#endif

}  // namespace expspline::simd::avx2
