#include "expspline/l2proj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "expspline/errors.hpp"
#include "expspline/fundamental.hpp"

namespace expspline {

namespace {

void check_gram(const GramSystem& g) {
    const auto n = static_cast<std::size_t>(g.n);
    if (g.n < 1 || g.diag.size() != n || g.sub.size() != n || g.super.size() != n) {
        throw DomainError("malformed Gram system");
    }
}

double sample_max(const Function& f, double lo, double hi, int m) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= m; ++i) best = std::max(best, f(lo + (hi - lo) * static_cast<double>(i) / m));
    return best;
}

// Dense-mesh supremum, doubling the mesh until it changes by less than 1e-6.
double refined_sup(const Function& f, double lo, double hi) {
    int m = 512;
    double prev = sample_max(f, lo, hi, m);
    for (int iter = 0; iter < 6; ++iter) {
        m *= 2;
        const double cur = sample_max(f, lo, hi, m);
        if (std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

struct IntervalSups {
    double hats;
    double s;
    double t;
};

IntervalSups interval_sups(double l0, double l1, double p, double h) {
    auto hats = [&](double tau) { return std::abs(phi2_ratio(l0, l1, tau - h, -h)) + std::abs(phi2_ratio(l0, l1, tau, h)); };
    auto s = [&](double x) { return std::abs(sfunc(l0, l1, p, x)); };
    auto t = [&](double x) { return std::abs(tfunc(l0, l1, p, x)); };
    return {refined_sup(hats, 0.0, h), refined_sup(s, -h, h), refined_sup(t, -h, h)};
}

double phi2(double l0, double l1, double x) { return fundamental_eval({l0, l1}, x); }

}  // namespace

QuadratureResult inner_product_p(const Function& f, const Function& g, double p, double a, double b,
                                 const QuadratureRule& rule, std::span<const double> breakpoints) {
    if (!(a < b)) throw DomainError("inner_product_p requires a < b");
    auto integrand = [&](double t) { return f(t) * g(t) * std::exp(p * t); };
    return integrate(integrand, a, b, rule, breakpoints);
}

GramSystem gram_assemble(const HatBasis& basis, double p) {
    const auto& part = basis.partition();
    const int n = part.size();
    GramSystem g{n, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                 std::vector<double>(n, 0.0), p};
    for (int j = 0; j + 1 < n; ++j) {
        const double l0 = basis.pair(j).l0;
        const double l1 = basis.pair(j).l1;
        const double h = part.length(j);
        const Scaled weight = exp_scaled(p * part.knot(j));
        const Scaled phi_pos = fundamental_scaled({l0, l1}, h);
        const Scaled phi_neg = fundamental_scaled({-l0, -l1}, h);  // = -Phi(-h)
        // integral_0^h Phi(t-h)^2 e^{pt} dt / Phi(-h)^2
        Scaled right = fundamental_scaled({-2 * l0, -2 * l1, -l0 - l1, p}, h);
        right.mantissa *= 2.0;
        // integral_0^h Phi(t)^2 e^{pt} dt / Phi(h)^2
        Scaled left = fundamental_scaled({2 * l0, 2 * l1, l0 + l1, -p}, h) * exp_scaled(p * h);
        left.mantissa *= 2.0;
        // integral_0^h Phi(t-h) Phi(t) e^{pt} dt / (Phi(-h) Phi(h))
        Scaled cross = fundamental_scaled({p + l0, p + l1, -l0, -l1}, h);
        const double d_part = (weight * right / (phi_neg * phi_neg)).value();
        const double c_part = (weight * left / (phi_pos * phi_pos)).value();
        const double off = (weight * cross / (phi_neg * phi_pos)).value();
        g.diag[j] += d_part;
        g.diag[j + 1] += c_part;
        g.super[j] = off;
        g.sub[j + 1] = off;
    }
    return g;
}

GramSystem gram_assemble_quadrature(const HatBasis& basis, double p, const QuadratureRule& rule) {
    const auto& part = basis.partition();
    const int n = part.size();
    GramSystem g{n, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                 std::vector<double>(n, 0.0), p};
    for (int j = 0; j + 1 < n; ++j) {
        const double a = part.knot(j);
        const double b = part.knot(j + 1);
        auto fall = [&](double t) { return basis.falling(j, t); };
        auto rise = [&](double t) { return basis.rising(j, t); };
        g.diag[j] += inner_product_p(fall, fall, p, a, b, rule).value;
        g.diag[j + 1] += inner_product_p(rise, rise, p, a, b, rule).value;
        const double off = inner_product_p(fall, rise, p, a, b, rule).value;
        g.super[j] = off;
        g.sub[j + 1] = off;
    }
    return g;
}

std::vector<double> gram_rhs(const HatBasis& basis, const Function& g, double p, const QuadratureRule& rule) {
    const auto& part = basis.partition();
    const int n = part.size();
    std::vector<double> beta(n, 0.0);
    for (int j = 0; j + 1 < n; ++j) {
        const double a = part.knot(j);
        const double b = part.knot(j + 1);
        auto fall = [&](double t) { return basis.falling(j, t); };
        auto rise = [&](double t) { return basis.rising(j, t); };
        beta[j] += inner_product_p(fall, g, p, a, b, rule).value;
        beta[j + 1] += inner_product_p(rise, g, p, a, b, rule).value;
    }
    return beta;
}

double tfunc(double l0, double l1, double p, double h) {
    if (!std::isfinite(h)) throw DomainError("tfunc at a non-finite h");
    if (h == 0.0) return 0.5;
    const Scaled num = fundamental_scaled({l0, l1, -p - l0, -p - l1}, h);
    const Scaled den = fundamental_scaled({l0 - l1, l1 - l0, 0.0, -p - l0 - l1}, h);
    return 0.5 * (num / den).value();
}

double sfunc(double l0, double l1, double p, double h) {
    if (!std::isfinite(h)) throw DomainError("sfunc at a non-finite h");
    if (h == 0.0) return 1.5;
    const Scaled num = fundamental_scaled({-l0, -l1}, h) * fundamental_scaled({l0, l1, -p}, h);
    const Scaled den = fundamental_scaled({l0 - l1, l1 - l0, 0.0, -p - l0 - l1}, h);
    return 0.5 * (num / den).value();
}

ABCD abcd_quadrature(double l0, double l1, double p, double h, const QuadratureRule& rule) {
    if (!(h > 0.0)) throw DomainError("abcd_quadrature requires h > 0");
    auto phi = [&](double x) { return phi2(l0, l1, x); };
    auto w = [&](double t) { return std::exp(p * t); };
    const double cross = integrate([&](double t) { return phi(t - h) * phi(t) * w(t); }, 0.0, h, rule).value;
    const double sq_left = integrate([&](double t) { return phi(t) * phi(t) * w(t); }, 0.0, h, rule).value;
    const double sq_right = integrate([&](double t) { return phi(t - h) * phi(t - h) * w(t); }, 0.0, h, rule).value;
    const double lin_left = integrate([&](double t) { return phi(t) * w(t); }, 0.0, h, rule).value;
    const double lin_right = integrate([&](double t) { return phi(t - h) * w(t); }, 0.0, h, rule).value;
    const double ph = phi(h);
    const double mh = phi(-h);
    return {ph / mh * cross / sq_left, mh / ph * cross / sq_right, ph * lin_left / sq_left, mh * lin_right / sq_right};
}

double dominance_factor(const GramSystem& gram) {
    check_gram(gram);
    double c = 0.0;
    for (int i = 0; i < gram.n; ++i) {
        if (!(gram.diag[i] > 0.0)) {
            std::ostringstream msg;
            msg << "Gram diagonal entry " << i << " is not positive (" << gram.diag[i] << ")";
            throw DomainError(msg.str());
        }
        c = std::max(c, (std::abs(gram.sub[i]) + std::abs(gram.super[i])) / gram.diag[i]);
    }
    return c;
}

int dominance_row(const GramSystem& gram) {
    check_gram(gram);
    int row = 0;
    double c = -1.0;
    for (int i = 0; i < gram.n; ++i) {
        const double r = (std::abs(gram.sub[i]) + std::abs(gram.super[i])) / gram.diag[i];
        if (r > c) {
            c = r;
            row = i;
        }
    }
    return row;
}

std::vector<double> tridiag_solve(std::span<const double> sub, std::span<const double> diag, std::span<const double> super,
                                  std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || sub.size() != n || super.size() != n || rhs.size() != n) throw DomainError("malformed tridiagonal system");
    bool dominant = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(std::abs(diag[i]) > std::abs(sub[i]) + std::abs(super[i]))) dominant = false;
    }
    std::vector<double> x(n);
    if (dominant) {
        std::vector<double> cp(n);
        std::vector<double> dp(n);
        cp[0] = super[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = diag[i] - sub[i] * cp[i - 1];
            cp[i] = super[i] / m;
            dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / m;
        }
        x[n - 1] = dp[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
        return x;
    }
    // Gaussian elimination with partial pivoting; fill-in lands on a second superdiagonal.
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> b(rhs.begin(), rhs.end());
    std::vector<double> dl(n, 0.0);
    std::vector<double> du(n, 0.0);
    std::vector<double> du2(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dl[i] = sub[i + 1];
        du[i] = super[i];
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) throw SingularSystemError("singular tridiagonal system", std::numeric_limits<double>::infinity());
            const double fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            const double tmp = d[i + 1];
            d[i + 1] = du[i] - fact * tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = tmp;
            const double bt = b[i];
            b[i] = b[i + 1];
            b[i + 1] = bt - fact * b[i + 1];
        }
    }
    if (d[n - 1] == 0.0) throw SingularSystemError("singular tridiagonal system", std::numeric_limits<double>::infinity());
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    return x;
}

std::vector<double> tridiag_solve(const GramSystem& gram) {
    check_gram(gram);
    if (gram.rhs.size() != static_cast<std::size_t>(gram.n)) throw DomainError("Gram right-hand side has the wrong length");
    return tridiag_solve(gram.sub, gram.diag, gram.super, gram.rhs);
}

ProjectionResult project(const HatBasis& basis, const Function& g, double p, const QuadratureRule& rule) {
    GramSystem gram = gram_assemble(basis, p);
    gram.rhs = gram_rhs(basis, g, p, rule);
    ProjectionResult r;
    r.coeffs = tridiag_solve(gram);
    r.c = dominance_factor(gram);
    try {
        r.norm_bound = operator_norm_bound(basis, p);
    } catch (const DominanceError&) {
        r.norm_bound.reset();
    }
    return r;
}

double tbound_mixed(double l0, double l1) {
    if (!(l0 < 0.0 && l1 > 0.0)) throw DomainError("tbound_mixed requires l0 < 0 < l1");
    return std::max((2 * l1 - l0) / (2 * l1 - 4 * l0), (l1 - 2 * l0) / (4 * l1 - 2 * l0));
}

double norm_bound_mixed(double l0, double l1) {
    if (!(l0 < 0.0 && l1 > 0.0)) throw DomainError("norm_bound_mixed requires l0 < 0 < l1");
    return 2.0 * std::max((2 * l1 - 4 * l0) / (-3 * l0), (4 * l1 - 2 * l0) / (3 * l1));
}

NormBound operator_norm_bound_generic(const HatBasis& basis, double p) {
    const auto& part = basis.partition();
    std::map<std::tuple<double, double, double>, IntervalSups> seen;
    double sup_hats = 0.0;
    double sup_s = 0.0;
    double c = 0.0;
    int worst = 0;
    for (int j = 0; j < part.intervals(); ++j) {
        const auto& pr = basis.pair(j);
        const auto key = std::make_tuple(pr.l0, pr.l1, part.length(j));
        auto it = seen.find(key);
        if (it == seen.end()) it = seen.emplace(key, interval_sups(pr.l0, pr.l1, p, part.length(j))).first;
        sup_hats = std::max(sup_hats, it->second.hats);
        sup_s = std::max(sup_s, it->second.s);
        if (it->second.t > c) {
            c = it->second.t;
            worst = j;
        }
    }
    if (c >= 1.0) {
        std::ostringstream msg;
        msg << "no dominance: sup |T| = " << c << " on interval " << worst;
        throw DominanceError(msg.str(), worst, c);
    }
    return {sup_hats * sup_s / (1.0 - c), NormBoundKind::Generic, c, sup_hats, sup_s};
}

NormBound operator_norm_bound_detail(const HatBasis& basis, double p) {
    const auto& pairs = basis.pairs();
    if (p == 0.0) {
        if (std::all_of(pairs.begin(), pairs.end(), [](const FrequencyPair& q) { return q.l0 == 0.0 && q.l1 == 0.0; })) {
            return {3.0, NormBoundKind::Polynomial, 0.5, 1.0, 1.5};
        }
        if (std::all_of(pairs.begin(), pairs.end(), [](const FrequencyPair& q) { return q.l1 == -q.l0; })) {
            return {4.0, NormBoundKind::Symmetric, 0.5, 1.0, 2.0};
        }
        if (std::all_of(pairs.begin(), pairs.end(), [](const FrequencyPair& q) { return q.l0 < 0.0 && q.l1 > 0.0; })) {
            double value = 0.0;
            double c = 0.0;
            for (const auto& q : pairs) {
                value = std::max(value, norm_bound_mixed(q.l0, q.l1));
                c = std::max(c, tbound_mixed(q.l0, q.l1));
            }
            return {value, NormBoundKind::MixedSign, c, 1.0, 2.0};
        }
    }
    return operator_norm_bound_generic(basis, p);
}

double operator_norm_bound(const HatBasis& basis, double p) { return operator_norm_bound_detail(basis, p).value; }

double operator_norm_bound_first(const HatBasis& basis, double p) {
    const auto& part = basis.partition();
    const GramSystem gram = gram_assemble(basis, p);
    const double c = dominance_factor(gram);
    if (c >= 1.0) {
        const int row = dominance_row(gram);
        throw DominanceError("Gram matrix is not dominant", row, c);
    }
    std::vector<double> mass(part.size(), 0.0);
    double sup_hats = 0.0;
    for (int j = 0; j < part.intervals(); ++j) {
        const auto& pr = basis.pair(j);
        const double h = part.length(j);
        const Scaled weight = exp_scaled(p * part.knot(j));
        // integral of the falling and rising parts against e^{pt}
        const Scaled fall = weight * fundamental_scaled({-pr.l0, -pr.l1, p}, h) / fundamental_scaled({-pr.l0, -pr.l1}, h);
        const Scaled rise = weight * fundamental_scaled({p + pr.l0, p + pr.l1, 0.0}, h) / fundamental_scaled({pr.l0, pr.l1}, h);
        mass[j] += fall.value();
        mass[j + 1] += rise.value();
        auto hats = [&](double tau) {
            return std::abs(phi2_ratio(pr.l0, pr.l1, tau - h, -h)) + std::abs(phi2_ratio(pr.l0, pr.l1, tau, h));
        };
        sup_hats = std::max(sup_hats, refined_sup(hats, 0.0, h));
    }
    double ratio = 0.0;
    for (int i = 0; i < part.size(); ++i) ratio = std::max(ratio, mass[i] / gram.diag[i]);
    return sup_hats / (1.0 - c) * ratio;
}

double lemma_constant(double a, double b) {
    if (!(a < 0.0)) throw DomainError("lemma_constant requires a < 0");
    const double e2 = (2 - a - b) / (2 * (2 - a));
    const double e3 = (2 * a * a + (2 * a - 1) * b + 2 - 3 * a) / (2 * (1 - 2 * a) * (2 - a));
    const double e4 = (1 - b) / (2 * (1 - 2 * a));
    return std::max({0.5, e2, e3, e4});
}

}  // namespace expspline
