#pragma once

#include <span>
#include <vector>

namespace expspline {

class Partition {
public:
    explicit Partition(std::vector<double> knots);
    static Partition uniform(double a, double b, int n);

    int size() const noexcept { return static_cast<int>(knots_.size()); }
    int intervals() const noexcept { return size() - 1; }
    double knot(int j) const { return knots_[j]; }
    double length(int j) const { return knots_[j + 1] - knots_[j]; }
    double front() const { return knots_.front(); }
    double back() const { return knots_.back(); }
    // Delta = max_j (t_{j+1} - t_j).
    double mesh() const noexcept { return mesh_; }
    const std::vector<double>& knots() const noexcept { return knots_; }
    // Interval index j with t in [t_j, t_{j+1}]; the last interval is closed.
    int locate(double t) const;

private:
    std::vector<double> knots_;
    double mesh_ = 0.0;
};

struct FrequencyPair {
    double l0;
    double l1;
    bool operator==(const FrequencyPair&) const = default;
};

// Radius delta such that Phi_{(l0, l1)} is increasing on [-delta, delta];
// +inf when l0 <= 0 <= l1.
double monotone_radius(double l0, double l1);

// Phi_{(l0, l1)}(x) / Phi_{(l0, l1)}(y) through the factored form
// e^{sigma x} sinh(d x)/d with sigma = (l0+l1)/2, d = (l1-l0)/2.
double phi2_ratio(double l0, double l1, double x, double y);

struct HatBasisOptions {
    bool allow_nonmonotone = false;
};

// Hat functions H_0, ..., H_{n-1} over a partition with one frequency pair
// per interval. Indices are 0-based throughout.
class HatBasis {
public:
    HatBasis(Partition partition, std::vector<FrequencyPair> pairs, HatBasisOptions options = {});

    const Partition& partition() const noexcept { return partition_; }
    const std::vector<FrequencyPair>& pairs() const noexcept { return pairs_; }
    const FrequencyPair& pair(int interval) const { return pairs_[interval]; }
    double radius(int interval) const { return radii_[interval]; }
    int size() const noexcept { return partition_.size(); }

    double operator()(int j, double t) const;
    // H_j on interval j (the falling part) and H_{j+1} on interval j (the rising part).
    double falling(int interval, double t) const;
    double rising(int interval, double t) const;

    bool all_mixed_sign() const;

private:
    Partition partition_;
    std::vector<FrequencyPair> pairs_;
    std::vector<double> radii_;
};

double hat_eval(const HatBasis& basis, int j, double t);

// U(t) = sum_j H_j(t).
double sum_hats(const HatBasis& basis, double t);

class SplineOrder2 {
public:
    SplineOrder2(HatBasis basis, std::vector<double> coeffs);

    const HatBasis& basis() const noexcept { return basis_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double operator()(double t) const;

private:
    HatBasis basis_;
    std::vector<double> coeffs_;
};

SplineOrder2 interpolate2(const HatBasis& basis, std::span<const double> values);

}  // namespace expspline
