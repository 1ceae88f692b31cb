#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rrde {

using Vec = std::vector<double>;

/// Small dense row-major matrix. Sized for level-2 blocks (N x N with N
/// rarely above 3), not for serious linear algebra.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline void add_inplace(Vec& x, std::span<const double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
}

inline void add_inplace(Mat& x, const Mat& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
}

/// x += u (outer) v, the rank-one update used by the Chen composition.
inline void add_outer(Mat& x, std::span<const double> u, std::span<const double> v) {
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) x(i, j) += u[i] * v[j];
}

inline double max_abs(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs(const Mat& x) { return max_abs(std::span<const double>(x.a)); }

inline double euclidean_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double frobenius_norm(const Mat& x) { return euclidean_norm(std::span<const double>(x.a)); }

/// Upper-triangular table over grid pairs (i, j) with i < j.
template <class T>
class PairTable {
public:
    PairTable() = default;
    explicit PairTable(std::size_t n) : n_(n), entries_(n * (n - 1) / 2) {
        if (n < 2) throw std::invalid_argument("PairTable: need at least 2 grid points");
    }

    std::size_t grid_size() const { return n_; }

    T& at(std::size_t i, std::size_t j) { return entries_[index(i, j)]; }
    const T& at(std::size_t i, std::size_t j) const { return entries_[index(i, j)]; }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= j || j >= n_) throw std::out_of_range("PairTable: require i < j < n");
        // row i holds pairs (i, i+1) .. (i, n-1)
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    std::size_t n_ = 0;
    std::vector<T> entries_;
};

}  // namespace rrde
