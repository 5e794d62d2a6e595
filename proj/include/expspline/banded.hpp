#pragma once

#include <span>
#include <vector>

namespace expspline {

// Square band matrix with kl sub- and ku super-diagonals. Rows keep kl extra
// columns on the right for the fill produced by row interchanges.
class BandMatrix {
public:
    BandMatrix(int n, int kl, int ku);

    int size() const noexcept { return n_; }
    int lower() const noexcept { return kl_; }
    int upper() const noexcept { return ku_; }

    // Throws DomainError outside the band.
    double& at(int i, int j);
    // 0 outside the stored band.
    double get(int i, int j) const;

    double norm1() const;
    double norm_inf() const;
    std::vector<double> multiply(std::span<const double> x) const;

private:
    friend class BandedLU;
    bool stored(int i, int j) const noexcept { return j >= i - kl_ && j <= i + kl_ + ku_ && j >= 0 && j < n_; }
    int width() const noexcept { return 2 * kl_ + ku_ + 1; }
    double& raw(int i, int j) { return data_[static_cast<std::size_t>(i) * width() + (j - i + kl_)]; }
    double raw(int i, int j) const { return data_[static_cast<std::size_t>(i) * width() + (j - i + kl_)]; }

    int n_;
    int kl_;
    int ku_;
    std::vector<double> data_;
};

// Gaussian elimination with partial pivoting inside the band.
class BandedLU {
public:
    // Throws SingularSystemError on a zero pivot.
    explicit BandedLU(BandMatrix a);

    std::vector<double> solve(std::span<const double> b) const;
    std::vector<double> solve_transpose(std::span<const double> b) const;

    // Estimate of ||A||_1 ||A^{-1}||_1 (Hager's method with Higham's extra test vector).
    double condition_estimate() const;

private:
    BandMatrix lu_;
    std::vector<int> pivots_;
    double norm1_;
};

}  // namespace expspline
