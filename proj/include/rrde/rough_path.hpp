#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rrde/grid_path.hpp"
#include "rrde/linalg.hpp"

namespace rrde {

/// First- and second-level increments over a grid pair.
struct RoughIncrement {
    Vec one;  // N
    Mat two;  // N x N
};

/// Step-2 rough path restricted to a finite grid. Only consecutive-interval
/// blocks are stored; every other pair is produced on demand by Chen
/// composition, so queried values are Chen-consistent by construction.
/// Off-grid times are not represented at all. Immutable after construction.
class RoughPathGrid {
public:
    RoughPathGrid(std::vector<double> times, std::size_t dim, std::vector<double> level1,
                  std::vector<double> level2, double p_exponent)
        : times_(std::move(times)),
          dim_(dim),
          level1_(std::move(level1)),
          level2_(std::move(level2)),
          p_(p_exponent) {
        if (times_.size() < 2)
            throw std::invalid_argument("RoughPathGrid: need at least 2 grid points");
        for (std::size_t k = 0; k + 1 < times_.size(); ++k)
            if (!(times_[k] < times_[k + 1]))
                throw std::invalid_argument("RoughPathGrid: times must be strictly increasing");
        if (dim_ == 0) throw std::invalid_argument("RoughPathGrid: dimension must be positive");
        std::size_t m = times_.size() - 1;
        if (level1_.size() != m * dim_ || level2_.size() != m * dim_ * dim_)
            throw std::invalid_argument("RoughPathGrid: block storage size mismatch");
        if (!(p_ >= 2.0 && p_ < 3.0))
            throw std::invalid_argument("RoughPathGrid: p exponent must lie in [2,3)");
    }

    std::size_t size() const { return times_.size(); }
    std::size_t intervals() const { return times_.size() - 1; }
    std::size_t dim() const { return dim_; }
    double p_exponent() const { return p_; }
    double time(std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }

    std::span<const double> level1_block(std::size_t k) const {
        return std::span<const double>(level1_).subspan(k * dim_, dim_);
    }
    std::span<const double> level2_block(std::size_t k) const {
        return std::span<const double>(level2_).subspan(k * dim_ * dim_, dim_ * dim_);
    }

    /// (X^1_{t_i t_j}, X^2_{t_i t_j}) by left-to-right Chen composition of the
    /// stored blocks:  X^2_{s,t} = X^2_{s,u} + X^2_{u,t} + X^1_{s,u} (x) X^1_{u,t}.
    /// An adjacent pair returns the stored blocks unchanged.
    RoughIncrement query(std::size_t i, std::size_t j) const {
        check_range(i, j);
        RoughIncrement acc;
        acc.one.assign(level1_block(i).begin(), level1_block(i).end());
        acc.two = Mat(dim_, dim_);
        auto b2 = level2_block(i);
        for (std::size_t e = 0; e < b2.size(); ++e) acc.two.a[e] = b2[e];
        for (std::size_t k = i + 1; k < j; ++k) compose_step(acc, k);
        return acc;
    }

    /// All-pairs tables built with one running composition per start index.
    /// Same arithmetic as query, O(n^2) blocks total.
    std::pair<PairTable<Vec>, PairTable<Mat>> all_pairs() const {
        PairTable<Vec> t1(size());
        PairTable<Mat> t2(size());
        for (std::size_t i = 0; i + 1 < size(); ++i) {
            RoughIncrement acc = query(i, i + 1);
            t1.at(i, i + 1) = acc.one;
            t2.at(i, i + 1) = acc.two;
            for (std::size_t j = i + 2; j < size(); ++j) {
                compose_step(acc, j - 1);
                t1.at(i, j) = acc.one;
                t2.at(i, j) = acc.two;
            }
        }
        return {std::move(t1), std::move(t2)};
    }

private:
    void check_range(std::size_t i, std::size_t j) const {
        if (i >= j || j >= times_.size())
            throw std::invalid_argument("RoughPathGrid: query requires i < j within the grid");
    }

    // acc covers (s, t_k); extend to (s, t_{k+1}).
    void compose_step(RoughIncrement& acc, std::size_t k) const {
        add_outer(acc.two, acc.one, level1_block(k));
        auto b2 = level2_block(k);
        for (std::size_t e = 0; e < b2.size(); ++e) acc.two.a[e] += b2[e];
        add_inplace(acc.one, level1_block(k));
    }

    std::vector<double> times_;
    std::size_t dim_;
    std::vector<double> level1_;  // per interval, N
    std::vector<double> level2_;  // per interval, N*N row-major
    double p_;
};

/// Canonical lift of the piecewise-linear interpolant of a sampled path.
/// On each consecutive interval the iterated integral of a linear segment
/// is exactly X^2_ij = (1/2) dx_i dx_j.
inline RoughPathGrid lift_piecewise_linear(const GridPath& path, double p_exponent = 2.5) {
    std::size_t n = path.size(), d = path.dim();
    std::vector<double> l1((n - 1) * d), l2((n - 1) * d * d);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        auto a = path.value(k);
        auto b = path.value(k + 1);
        for (std::size_t i = 0; i < d; ++i) l1[k * d + i] = b[i] - a[i];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                l2[k * d * d + i * d + j] = 0.5 * l1[k * d + i] * l1[k * d + j];
    }
    return RoughPathGrid(path.times(), d, std::move(l1), std::move(l2), p_exponent);
}

/// Ito-style enrichment of the same increments: X^2 = (1/2) dx (x) dx - (1/2) h Id
/// per interval of width h. Deliberately non-geometric; the symmetric-part
/// defect equals h/2. Used as a negative control and rejected by the solver
/// unless overridden.
inline RoughPathGrid lift_ito(const GridPath& path, double p_exponent = 2.5) {
    std::size_t n = path.size(), d = path.dim();
    std::vector<double> l1((n - 1) * d), l2((n - 1) * d * d);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double h = path.time(k + 1) - path.time(k);
        auto a = path.value(k);
        auto b = path.value(k + 1);
        for (std::size_t i = 0; i < d; ++i) l1[k * d + i] = b[i] - a[i];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                l2[k * d * d + i * d + j] =
                    0.5 * l1[k * d + i] * l1[k * d + j] - (i == j ? 0.5 * h : 0.0);
    }
    return RoughPathGrid(path.times(), d, std::move(l1), std::move(l2), p_exponent);
}

/// Max over all grid triples s < u < t of the entrywise Chen defect
/// | table_{st} - table_{su} - table_{ut} - X^1_{su} (x) X^1_{ut} |
/// of an externally supplied level-2 table.
inline double chen_defect(const RoughPathGrid& X, const PairTable<Mat>& table) {
    std::size_t n = X.size(), d = X.dim();
    if (table.grid_size() != n)
        throw std::invalid_argument("chen_defect: table grid size mismatch");
    // X^1 over all pairs, by running composition (exact level-1 additivity
    // is not assumed of the table, only of X itself).
    PairTable<Vec> one(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Vec acc(X.level1_block(i).begin(), X.level1_block(i).end());
        one.at(i, i + 1) = acc;
        for (std::size_t j = i + 2; j < n; ++j) {
            add_inplace(acc, X.level1_block(j - 1));
            one.at(i, j) = acc;
        }
    }
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            const Vec& left = one.at(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                const Mat& st = table.at(i, j);
                const Mat& su = table.at(i, k);
                const Mat& ut = table.at(k, j);
                const Vec& right = one.at(k, j);
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c) {
                        double v = st(r, c) - su(r, c) - ut(r, c) - left[r] * right[c];
                        defect = std::max(defect, std::abs(v));
                    }
            }
        }
    return defect;
}

/// Max over consecutive intervals of | Sym(X^2) - (1/2) X^1 (x) X^1 | entrywise.
/// Zero (up to roundoff) exactly for lifts of smooth/piecewise-linear paths.
inline double geometricity_defect(const RoughPathGrid& X) {
    std::size_t d = X.dim();
    double defect = 0.0;
    for (std::size_t k = 0; k < X.intervals(); ++k) {
        auto one = X.level1_block(k);
        auto two = X.level2_block(k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                double sym = 0.5 * (two[i * d + j] + two[j * d + i]);
                defect = std::max(defect, std::abs(sym - 0.5 * one[i] * one[j]));
            }
    }
    return defect;
}

}  // namespace rrde
