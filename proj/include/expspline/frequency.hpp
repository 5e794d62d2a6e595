#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace expspline {

// Ordered multiset of real frequencies (lambda_0, ..., lambda_N). The
// operator L = prod (D - lambda_j) and the space E(Lambda) hang off it.
class FrequencyVector {
public:
    FrequencyVector() = default;
    FrequencyVector(std::initializer_list<double> f);
    explicit FrequencyVector(std::vector<double> f);

    std::size_t size() const noexcept { return freqs_.size(); }
    bool empty() const noexcept { return freqs_.empty(); }
    // N, the order of the fundamental function (size - 1).
    int order() const noexcept { return static_cast<int>(freqs_.size()) - 1; }
    double operator[](std::size_t i) const { return freqs_[i]; }
    const std::vector<double>& values() const noexcept { return freqs_; }
    std::span<const double> span() const noexcept { return freqs_; }

    double max() const;
    double min() const;

    FrequencyVector shifted(double p) const;
    FrequencyVector reflected() const;
    FrequencyVector scaled(double c) const;
    FrequencyVector appended(double lambda) const;
    // Multiset union A ∪ B (concatenation).
    FrequencyVector joined(const FrequencyVector& other) const;

    // Distinct values with multiplicities. Nodes closer than
    // tol_rel * max(1, |lambda|) to a cluster representative are merged;
    // the representative is the cluster mean. Output is sorted ascending.
    std::vector<std::pair<double, int>> multiplicities(double tol_rel = 1e-8) const;

    bool operator==(const FrequencyVector&) const = default;

private:
    std::vector<double> freqs_;
};

enum class TransformKind { Shift, Reflect, Scale };

// Result of a frequency transform together with the scalar rule
//   shift p:   e^{pt} Phi_L(t) = prefactor(t) * Phi_image(t)
//   reflect:   Phi_L(-t)      = prefactor(t) * Phi_image(t)
//   scale c:   Phi_L(ct)      = prefactor(t) * Phi_image(t)
struct FrequencyTransform {
    TransformKind kind;
    double param;
    FrequencyVector source;
    FrequencyVector image;

    double prefactor(double t) const;
    // Left-hand side of the rule, evaluated from the source vector.
    double lhs(double t) const;
    // Right-hand side, prefactor(t) * Phi_image(t).
    double rhs(double t) const;
};

FrequencyTransform transform(const FrequencyVector& freqs, TransformKind kind, double param = 0.0);

}  // namespace expspline
