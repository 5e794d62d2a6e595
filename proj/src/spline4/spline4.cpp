#include "expspline/spline4.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "expspline/banded.hpp"
#include "expspline/errbound2.hpp"
#include "expspline/errors.hpp"
#include "expspline/fundamental.hpp"
#include "expspline/simd.hpp"

namespace expspline {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kResidualTol = 1e-10;
constexpr double kIllConditioned = 1e12;
constexpr double kSingular = 1e15;

bool close(double a, double b) { return std::abs(a - b) <= kWeightTol * (1.0 + std::abs(a) + std::abs(b)); }

void check_quad(const Quad& q) {
    for (double v : q) {
        if (!std::isfinite(v)) throw DomainError("non-finite frequency in quadruple");
    }
}

bool quad_satisfies(const Quad& q, double p) { return close(q[0] + q[2], -p) && close(q[1] + q[3], -p); }

std::string format_quad(const Quad& q) {
    std::ostringstream out;
    out << "(" << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ")";
    return out.str();
}

// Ways to split q into two pairs with equal sums; p = -sum.
struct Split {
    double p;
    std::array<double, 2> first;
    std::array<double, 2> second;
};

std::vector<Split> equal_sum_splits(const Quad& q) {
    static constexpr int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    std::vector<Split> out;
    for (const auto& pr : pairings) {
        const double s1 = q[pr[0]] + q[pr[1]];
        const double s2 = q[pr[2]] + q[pr[3]];
        if (close(s1, s2)) out.push_back({-0.5 * (s1 + s2) + 0.0, {q[pr[0]], q[pr[1]]}, {q[pr[2]], q[pr[3]]}});
    }
    return out;
}

// Ordering of one quadruple for a given p: prefer a hat pair with l0 <= 0 <= l1,
// then the smaller |l0| + |l1|.
std::optional<Quad> arrange_one(const Quad& q, double p) {
    std::optional<Quad> best;
    auto score = [](const Quad& c) {
        const bool mixed = c[0] <= 0.0 && c[1] >= 0.0;
        return std::make_pair(mixed ? 0 : 1, std::abs(c[0]) + std::abs(c[1]));
    };
    for (const Split& s : equal_sum_splits(q)) {
        if (!close(s.p, p)) continue;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                Quad c{s.first[a], s.second[b], s.first[1 - a], s.second[1 - b]};
                if (c[0] > c[1]) c = {c[1], c[0], c[3], c[2]};
                if (!best || score(c) < score(*best)) best = c;
            }
        }
    }
    return best;
}

std::array<double, 4> local_nodes(const Quad& q, double h) { return {h * q[0], h * q[1], h * q[2], h * q[3]}; }

// d[m][k] = d^m/dsigma^m Phi_{(x_0..x_k)}(sigma), m, k = 0..3.
using LocalTable = std::array<std::array<double, 4>, 4>;

LocalTable local_table(const std::array<double, 4>& x, double sigma) {
    FundamentalTable table(x, sigma);
    const double scale = std::exp(table.log_scale());
    if (!std::isfinite(scale)) throw RangeError("local basis overflows; |lambda h| is too large");
    LocalTable d{};
    for (int m = 0; m < 4; ++m) {
        for (int k = 0; k < 4; ++k) d[m][k] = table.derivative(0, k, m) * scale;
    }
    return d;
}

}  // namespace

QuadFrequencySet::QuadFrequencySet(std::vector<Quad> quads, std::optional<double> p) : quads_(std::move(quads)), p_(p) {
    if (quads_.empty()) throw DomainError("quadruple set is empty");
    for (const Quad& q : quads_) check_quad(q);
    if (p_) {
        if (!std::isfinite(*p_)) throw DomainError("non-finite weight exponent p");
        for (int j = 0; j < size(); ++j) {
            if (!quad_satisfies(quads_[j], *p_)) {
                std::ostringstream msg;
                msg << "quadruple " << format_quad(quads_[j]) << " on interval " << j
                    << " violates l0 = -p - l2, l1 = -p - l3 for p = " << *p_;
                throw DomainError(msg.str());
            }
        }
        return;
    }
    const double p0 = -(quads_[0][0] + quads_[0][2]) + 0.0;
    if (satisfies(p0)) p_ = p0;
}

QuadFrequencySet QuadFrequencySet::symmetric(std::span<const double> xi) {
    std::vector<Quad> quads;
    quads.reserve(xi.size());
    for (double x : xi) quads.push_back({-x, x, x, -x});
    return QuadFrequencySet(std::move(quads), 0.0);
}

QuadFrequencySet QuadFrequencySet::uniform(const Quad& quad, int intervals, std::optional<double> p) {
    if (intervals < 1) throw DomainError("uniform quadruple set needs at least one interval");
    return QuadFrequencySet(std::vector<Quad>(intervals, quad), p);
}

QuadFrequencySet QuadFrequencySet::arranged(std::vector<Quad> quads, std::optional<double> p) {
    if (quads.empty()) throw DomainError("quadruple set is empty");
    for (const Quad& q : quads) check_quad(q);
    std::vector<double> candidates;
    if (p) {
        candidates.push_back(*p);
    } else {
        for (const Split& s : equal_sum_splits(quads[0])) candidates.push_back(s.p);
    }
    std::optional<double> chosen;
    for (double c : candidates) {
        const bool ok = std::all_of(quads.begin(), quads.end(), [&](const Quad& q) { return arrange_one(q, c).has_value(); });
        if (!ok) continue;
        if (!chosen || std::abs(c) < std::abs(*chosen)) chosen = c;
    }
    if (!chosen) {
        std::ostringstream msg;
        msg << "no common p with l0 = -p - l2, l1 = -p - l3 under any ordering;";
        for (std::size_t j = 0; j < quads.size(); ++j) {
            msg << " interval " << j << " " << format_quad(quads[j]) << " admits p in {";
            const auto splits = equal_sum_splits(quads[j]);
            for (std::size_t i = 0; i < splits.size(); ++i) msg << (i ? ", " : "") << splits[i].p;
            msg << "}";
            if (j + 1 < quads.size()) msg << ";";
        }
        if (p) msg << "; requested p = " << *p;
        throw DomainError(msg.str());
    }
    for (Quad& q : quads) q = *arrange_one(q, *chosen);
    return QuadFrequencySet(std::move(quads), *chosen);
}

bool QuadFrequencySet::satisfies(double p) const {
    return std::all_of(quads_.begin(), quads_.end(), [&](const Quad& q) { return quad_satisfies(q, p); });
}

FrequencyPair QuadFrequencySet::hat_pair(int j) const {
    const Quad& q = quads_[j];
    return {std::min(q[0], q[1]), std::max(q[0], q[1])};
}

FrequencyPair QuadFrequencySet::outer_pair(int j) const {
    const Quad& q = quads_[j];
    return {std::min(q[2], q[3]), std::max(q[2], q[3])};
}

std::vector<FrequencyPair> QuadFrequencySet::hat_pairs() const {
    std::vector<FrequencyPair> out;
    out.reserve(quads_.size());
    for (int j = 0; j < size(); ++j) out.push_back(hat_pair(j));
    return out;
}

bool QuadFrequencySet::all_zero() const {
    return std::all_of(quads_.begin(), quads_.end(),
                       [](const Quad& q) { return q[0] == 0.0 && q[1] == 0.0 && q[2] == 0.0 && q[3] == 0.0; });
}

bool QuadFrequencySet::all_symmetric() const {
    if (!p_ || *p_ != 0.0) return false;
    return std::all_of(quads_.begin(), quads_.end(), [](const Quad& q) { return q[1] == -q[0]; });
}

SplineOrder4::SplineOrder4(Partition partition, QuadFrequencySet quads, std::vector<std::array<double, 4>> coeffs,
                           SolveInfo info)
    : partition_(std::move(partition)), quads_(std::move(quads)), info_(info) {
    const int m = partition_.intervals();
    if (quads_.size() != m) {
        std::ostringstream msg;
        msg << "expected " << m << " quadruples, got " << quads_.size();
        throw DomainError(msg.str());
    }
    if (static_cast<int>(coeffs.size()) != m) {
        std::ostringstream msg;
        msg << "expected " << m << " coefficient rows, got " << coeffs.size();
        throw DomainError(msg.str());
    }
    scaled_.resize(m);
    for (int j = 0; j < m; ++j) {
        const double h = partition_.length(j);
        double hk = 1.0;
        for (int k = 0; k < 4; ++k) {
            if (!std::isfinite(coeffs[j][k])) throw DomainError("non-finite spline coefficient");
            scaled_[j][k] = coeffs[j][k] * hk;
            hk *= h;
        }
    }
}

std::vector<std::array<double, 4>> SplineOrder4::coefficients() const {
    std::vector<std::array<double, 4>> out(scaled_.size());
    for (std::size_t j = 0; j < scaled_.size(); ++j) {
        const double h = partition_.length(static_cast<int>(j));
        double hk = 1.0;
        for (int k = 0; k < 4; ++k) {
            out[j][k] = scaled_[j][k] / hk;
            hk *= h;
        }
    }
    return out;
}

std::array<double, 4> SplineOrder4::local_derivatives(int interval, double tau) const {
    if (interval < 0 || interval >= partition_.intervals()) throw DomainError("interval index out of range");
    const double h = partition_.length(interval);
    const double sigma = std::clamp(tau / h, 0.0, 1.0);
    const LocalTable d = local_table(local_nodes(quads_[interval], h), sigma);
    std::array<double, 4> out{};
    double hm = 1.0;
    for (int m = 0; m < 4; ++m) {
        double sum = 0.0;
        for (int k = 0; k < 4; ++k) sum += scaled_[interval][k] * d[m][k];
        out[m] = sum / hm;
        hm *= h;
    }
    return out;
}

std::array<double, 4> SplineOrder4::derivatives(double t) const {
    const int j = partition_.locate(t);
    return local_derivatives(j, t - partition_.knot(j));
}

double SplineOrder4::derivative(double t, int order) const {
    if (order < 0 || order > 3) throw DomainError("spline derivative order must be in [0, 3]");
    return derivatives(t)[order];
}

double SplineOrder4::term_magnitude(int interval, double tau, int order) const {
    const double h = partition_.length(interval);
    const LocalTable d = local_table(local_nodes(quads_[interval], h), std::clamp(tau / h, 0.0, 1.0));
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += std::abs(scaled_[interval][k] * d[order][k]);
    return sum / std::pow(h, order);
}

void SplineOrder4::evaluate(std::span<const double> t, int order, std::span<double> out) const {
    if (order < 0 || order > 3) throw DomainError("spline derivative order must be in [0, 3]");
    if (t.size() != out.size()) throw DomainError("evaluate: length mismatch");
    std::vector<double> sigma;
    std::size_t i = 0;
    while (i < t.size()) {
        const int j = partition_.locate(t[i]);
        std::size_t end = i + 1;
        while (end < t.size() && t[end] >= partition_.knot(j) && t[end] <= partition_.knot(j + 1) &&
               partition_.locate(t[end]) == j) {
            ++end;
        }
        const double h = partition_.length(j);
        const auto x = local_nodes(quads_[j], h);
        const simd::ExpansionPlan plan = simd::make_plan(x, scaled_[j], order);
        sigma.resize(end - i);
        for (std::size_t k = i; k < end; ++k) sigma[k - i] = std::clamp((t[k] - partition_.knot(j)) / h, 0.0, 1.0);
        std::span<double> dst = out.subspan(i, end - i);
        simd::expansion_eval(plan, sigma, dst);
        const double hm = std::pow(h, order);
        for (double& v : dst) v /= hm;
        i = end;
    }
}

SplineOrder4 build_interpolant4(const Partition& partition, const QuadFrequencySet& quads, std::span<const double> values,
                                double d_left, double d_right) {
    const int n = partition.size();
    const int m = partition.intervals();
    if (n < 2) throw DomainError("order-4 interpolation needs at least two knots");
    if (static_cast<int>(values.size()) != n) {
        std::ostringstream msg;
        msg << "expected " << n << " values, got " << values.size();
        throw DomainError(msg.str());
    }
    if (quads.size() != m) {
        std::ostringstream msg;
        msg << "expected " << m << " quadruples, got " << quads.size();
        throw DomainError(msg.str());
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("non-finite interpolation value");
    }
    if (!std::isfinite(d_left) || !std::isfinite(d_right)) throw DomainError("non-finite end derivative");

    // Unknowns c_{j,k} at column 4j + k. Rows: left clamp, then per interval
    // [value at t_j, value at t_{j+1}, C1 and C2 at t_{j+1} or the right clamp].
    const int size = 4 * m;
    BandMatrix a(size, 4, 4);
    std::vector<double> rhs(size, 0.0);

    std::vector<LocalTable> at0(m);
    std::vector<LocalTable> at1(m);
    for (int j = 0; j < m; ++j) {
        const auto x = local_nodes(quads[j], partition.length(j));
        at0[j] = local_table(x, 0.0);
        at1[j] = local_table(x, 1.0);
    }

    for (int k = 0; k < 4; ++k) a.at(0, k) = at0[0][1][k];
    rhs[0] = partition.length(0) * d_left;
    for (int j = 0; j < m; ++j) {
        const int row = 1 + 4 * j;
        const int col = 4 * j;
        const double h = partition.length(j);
        a.at(row, col) = 1.0;
        rhs[row] = values[j];
        for (int k = 0; k < 4; ++k) a.at(row + 1, col + k) = at1[j][0][k];
        rhs[row + 1] = values[j + 1];
        if (j + 1 < m) {
            const double ratio = h / partition.length(j + 1);
            for (int k = 0; k < 4; ++k) {
                a.at(row + 2, col + k) = at1[j][1][k];
                a.at(row + 2, col + 4 + k) = -ratio * at0[j + 1][1][k];
                a.at(row + 3, col + k) = at1[j][2][k];
                a.at(row + 3, col + 4 + k) = -ratio * ratio * at0[j + 1][2][k];
            }
        } else {
            for (int k = 0; k < 4; ++k) a.at(row + 2, col + k) = at1[j][1][k];
            rhs[row + 2] = h * d_right;
        }
    }

    // Row equilibration.
    for (int i = 0; i < size; ++i) {
        double big = 0.0;
        for (int j = std::max(0, i - 4); j <= std::min(size - 1, i + 4); ++j) big = std::max(big, std::abs(a.get(i, j)));
        if (big == 0.0 || !std::isfinite(big)) {
            throw SingularSystemError("interpolation system has an empty or non-finite row",
                                      std::numeric_limits<double>::infinity());
        }
        for (int j = std::max(0, i - 4); j <= std::min(size - 1, i + 4); ++j) a.at(i, j) /= big;
        rhs[i] /= big;
    }

    const BandMatrix original = a;
    const BandedLU lu(std::move(a));
    SolveInfo info;
    info.condition = lu.condition_estimate();
    if (!(info.condition < kSingular)) {
        std::ostringstream msg;
        msg << "interpolation system is numerically singular (condition estimate " << info.condition << ")";
        throw SingularSystemError(msg.str(), info.condition);
    }
    info.ill_conditioned = info.condition >= kIllConditioned;

    std::vector<double> x = lu.solve(rhs);
    auto relative_residual = [&](std::vector<double>& r) {
        r = original.multiply(x);
        double rn = 0.0;
        double xn = 0.0;
        double bn = 0.0;
        for (int i = 0; i < size; ++i) {
            r[i] = rhs[i] - r[i];
            rn = std::max(rn, std::abs(r[i]));
            xn = std::max(xn, std::abs(x[i]));
            bn = std::max(bn, std::abs(rhs[i]));
        }
        const double den = original.norm_inf() * xn + bn;
        return den > 0.0 ? rn / den : rn;
    };
    std::vector<double> r;
    info.residual = relative_residual(r);
    if (info.residual > kResidualTol) {
        const std::vector<double> dx = lu.solve(r);
        for (int i = 0; i < size; ++i) x[i] += dx[i];
        info.residual = relative_residual(r);
    }
    if (!(info.residual <= kResidualTol)) {
        std::ostringstream msg;
        msg << "interpolation residual " << info.residual << " exceeds " << kResidualTol << " (condition estimate "
            << info.condition << ")";
        throw SingularSystemError(msg.str(), info.condition);
    }

    std::vector<std::array<double, 4>> coeffs(m);
    for (int j = 0; j < m; ++j) {
        const double h = partition.length(j);
        double hk = 1.0;
        for (int k = 0; k < 4; ++k) {
            coeffs[j][k] = x[4 * j + k] / hk;
            hk *= h;
        }
    }
    return SplineOrder4(partition, quads, std::move(coeffs), info);
}

double spline4_eval(const SplineOrder4& s, double t, int order) { return s.derivative(t, order); }

bool SmoothnessReport::ok() const {
    for (const KnotJump& k : knots) {
        for (int m = 0; m < 3; ++m) {
            if (!(k.jump[m] <= k.threshold[m])) return false;
        }
    }
    return true;
}

SmoothnessReport smoothness_report(const SplineOrder4& s) {
    SmoothnessReport report;
    const Partition& part = s.partition();
    for (int knot = 1; knot + 1 < part.size(); ++knot) {
        const auto left = s.local_derivatives(knot - 1, part.length(knot - 1));
        const auto right = s.local_derivatives(knot, 0.0);
        KnotJump kj{knot, {}, {}};
        for (int m = 0; m < 3; ++m) {
            kj.jump[m] = std::abs(right[m] - left[m]);
            const double scale =
                std::max(s.term_magnitude(knot - 1, part.length(knot - 1), m), s.term_magnitude(knot, 0.0, m));
            kj.threshold[m] = 1e-9 * (1.0 + scale);
            report.max_jump = std::max(report.max_jump, kj.jump[m]);
        }
        report.knots.push_back(kj);
    }
    return report;
}

double residual_orthogonality(const Derivs2& f_derivs, const SplineOrder4& s, const HatBasis& basis, double p,
                              const QuadratureRule& rule) {
    const Partition& part = s.partition();
    if (basis.partition().knots() != part.knots()) throw DomainError("hat basis and spline use different knots");
    for (int j = 0; j < part.intervals(); ++j) {
        const FrequencyPair want = s.quads().hat_pair(j);
        const FrequencyPair& have = basis.pair(j);
        if (!close(want.l0, have.l0) || !close(want.l1, have.l1)) {
            std::ostringstream msg;
            msg << "interval " << j << ": hat pair (" << have.l0 << ", " << have.l1 << ") does not match (l0, l1) = ("
                << want.l0 << ", " << want.l1 << ") of the quadruple";
            throw DomainError(msg.str());
        }
    }
    // <f, H_i>_p collected interval by interval: the falling part feeds H_j,
    // the rising part H_{j+1}.
    std::vector<double> inner(part.size(), 0.0);
    for (int j = 0; j < part.intervals(); ++j) {
        const Quad& q = s.quads()[j];
        const double sum = q[2] + q[3];
        const double prod = q[2] * q[3];
        const double a = part.knot(j);
        auto f = [&](double t) {
            const auto fd = f_derivs(t);
            const auto sd = s.local_derivatives(j, t - a);
            const double e0 = fd[0] - sd[0];
            const double e1 = fd[1] - sd[1];
            const double e2 = fd[2] - sd[2];
            return (e2 - sum * e1 + prod * e0) * std::exp(p * t);
        };
        inner[j] += integrate([&](double t) { return f(t) * basis.falling(j, t); }, a, part.knot(j + 1), rule).value;
        inner[j + 1] += integrate([&](double t) { return f(t) * basis.rising(j, t); }, a, part.knot(j + 1), rule).value;
    }
    double worst = 0.0;
    for (double v : inner) worst = std::max(worst, std::abs(v));
    return worst;
}

namespace {

void check_bound_inputs(const Partition& partition, const QuadFrequencySet& quads, double p, double maxLF) {
    if (quads.size() != partition.intervals()) {
        std::ostringstream msg;
        msg << "expected " << partition.intervals() << " quadruples, got " << quads.size();
        throw DomainError(msg.str());
    }
    if (!(maxLF >= 0.0) || !std::isfinite(maxLF)) throw DomainError("maxLF must be finite and nonnegative");
    if (!std::isfinite(p) || !quads.satisfies(p)) {
        std::ostringstream msg;
        msg << "no valid p: the quadruples do not satisfy l0 = -p - l2, l1 = -p - l3 for p = " << p;
        throw DomainError(msg.str());
    }
}

NormBound hat_norm(const Partition& partition, const QuadFrequencySet& quads, double p) {
    if (p == 0.0 && quads.all_zero()) return {3.0, NormBoundKind::Polynomial, 0.5, 1.0, 1.5};
    if (p == 0.0 && std::all_of(quads.quads().begin(), quads.quads().end(), [](const Quad& q) { return q[1] == -q[0]; })) {
        return {4.0, NormBoundKind::Symmetric, 0.5, 1.0, 2.0};
    }
    const HatBasis basis(partition, quads.hat_pairs());
    return operator_norm_bound_detail(basis, p);
}

}  // namespace

BoundCertificate error_bound4(const Partition& partition, const QuadFrequencySet& quads, double p, double maxLF) {
    check_bound_inputs(partition, quads, p, maxLF);
    BoundCertificate cert;
    cert.delta = partition.mesh();
    const NormBound nb = hat_norm(partition, quads, p);
    cert.norm_bound = nb.value;
    cert.kind = nb.kind;
    cert.c_factor = nb.c;
    const double d2 = cert.delta * cert.delta;
    if (nb.kind == NormBoundKind::Polynomial || nb.kind == NormBoundKind::Symmetric) {
        // M_{(xi,-xi)} <= Delta^2 / 8 on every interval.
        cert.M0_max = d2 / 8.0;
        cert.M2_max = d2 / 8.0;
    } else {
        for (int j = 0; j < partition.intervals(); ++j) {
            const double a = partition.knot(j);
            const double b = partition.knot(j + 1);
            const FrequencyPair hp = quads.hat_pair(j);
            const FrequencyPair op = quads.outer_pair(j);
            cert.M0_max = std::max(cert.M0_max, M_constant(hp.l0, hp.l1, a, b).M);
            cert.M2_max = std::max(cert.M2_max, M_constant(op.l0, op.l1, a, b).M);
        }
    }
    cert.C = (1.0 + cert.norm_bound) * cert.M2_max * cert.M0_max;
    cert.bound = cert.C * maxLF;
    return cert;
}

double second_order_error_bound(const Partition& partition, const QuadFrequencySet& quads, double p, double maxLF) {
    check_bound_inputs(partition, quads, p, maxLF);
    return (1.0 + hat_norm(partition, quads, p).value) * maxLF;
}

std::string spline4_to_json(const SplineOrder4& s) {
    nlohmann::ordered_json doc;
    doc["knots"] = s.partition().knots();
    nlohmann::ordered_json quads = nlohmann::ordered_json::array();
    for (const Quad& q : s.quads().quads()) quads.push_back(q);
    doc["quads"] = quads;
    if (s.quads().p()) {
        doc["p"] = *s.quads().p();
    } else {
        doc["p"] = nullptr;
    }
    doc["basis"] = "Phi_(l0..lk)(t - t_j), k = 0..3";
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& row : s.coefficients()) coeffs.push_back(row);
    doc["coefficients"] = coeffs;
    doc["condition_estimate"] = s.solve_info().condition;
    return doc.dump(2);
}

}  // namespace expspline
