#include "expspline/frequency.hpp"

#include <algorithm>
#include <cmath>

#include "expspline/errors.hpp"
#include "expspline/fundamental.hpp"

namespace expspline {

namespace {

void check_finite(const std::vector<double>& f) {
    for (double v : f) {
        if (!std::isfinite(v)) throw DomainError("frequency vector contains a non-finite entry");
    }
}

}  // namespace

FrequencyVector::FrequencyVector(std::initializer_list<double> f) : freqs_(f) { check_finite(freqs_); }

FrequencyVector::FrequencyVector(std::vector<double> f) : freqs_(std::move(f)) { check_finite(freqs_); }

double FrequencyVector::max() const {
    if (freqs_.empty()) throw DomainError("empty frequency vector");
    return *std::max_element(freqs_.begin(), freqs_.end());
}

double FrequencyVector::min() const {
    if (freqs_.empty()) throw DomainError("empty frequency vector");
    return *std::min_element(freqs_.begin(), freqs_.end());
}

FrequencyVector FrequencyVector::shifted(double p) const {
    std::vector<double> out(freqs_);
    for (double& v : out) v += p;
    return FrequencyVector(std::move(out));
}

FrequencyVector FrequencyVector::reflected() const {
    std::vector<double> out(freqs_);
    for (double& v : out) v = -v;
    return FrequencyVector(std::move(out));
}

FrequencyVector FrequencyVector::scaled(double c) const {
    std::vector<double> out(freqs_);
    for (double& v : out) v *= c;
    return FrequencyVector(std::move(out));
}

FrequencyVector FrequencyVector::appended(double lambda) const {
    std::vector<double> out(freqs_);
    out.push_back(lambda);
    return FrequencyVector(std::move(out));
}

FrequencyVector FrequencyVector::joined(const FrequencyVector& other) const {
    std::vector<double> out(freqs_);
    out.insert(out.end(), other.freqs_.begin(), other.freqs_.end());
    return FrequencyVector(std::move(out));
}

std::vector<std::pair<double, int>> FrequencyVector::multiplicities(double tol_rel) const {
    std::vector<double> sorted(freqs_);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, int>> out;
    double sum = 0.0;
    double first = 0.0;
    int count = 0;
    for (double v : sorted) {
        if (count > 0 && std::abs(v - first) <= tol_rel * std::max(1.0, std::abs(first))) {
            sum += v;
            ++count;
            continue;
        }
        if (count > 0) out.emplace_back(sum / count, count);
        first = v;
        sum = v;
        count = 1;
    }
    if (count > 0) out.emplace_back(sum / count, count);
    return out;
}

double FrequencyTransform::prefactor(double t) const {
    (void)t;
    switch (kind) {
        case TransformKind::Shift:
            return 1.0;
        case TransformKind::Reflect:
            return (source.order() % 2 == 0) ? 1.0 : -1.0;
        case TransformKind::Scale:
            return std::pow(param, source.order());
    }
    return 1.0;
}

double FrequencyTransform::lhs(double t) const {
    switch (kind) {
        case TransformKind::Shift:
            return std::exp(param * t) * fundamental_eval(source, t);
        case TransformKind::Reflect:
            return fundamental_eval(source, -t);
        case TransformKind::Scale:
            return fundamental_eval(source, param * t);
    }
    return 0.0;
}

double FrequencyTransform::rhs(double t) const { return prefactor(t) * fundamental_eval(image, t); }

FrequencyTransform transform(const FrequencyVector& freqs, TransformKind kind, double param) {
    if (freqs.empty()) throw DomainError("transform of an empty frequency vector");
    if (!std::isfinite(param)) throw DomainError("transform parameter must be finite");
    switch (kind) {
        case TransformKind::Shift:
            return {kind, param, freqs, freqs.shifted(param)};
        case TransformKind::Reflect:
            return {kind, 0.0, freqs, freqs.reflected()};
        case TransformKind::Scale:
            if (param == 0.0) throw DomainError("scale factor must be nonzero");
            return {kind, param, freqs, freqs.scaled(param)};
    }
    throw DomainError("unknown transform kind");
}

}  // namespace expspline
