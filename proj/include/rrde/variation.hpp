#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rrde/grid_path.hpp"

namespace rrde {

/// Nonnegative superadditive function on grid pairs, evaluated lazily.
/// omega(i, i) = 0 by convention. Copies share the underlying evaluator.
class Control {
public:
    using EvalFn = std::function<double(std::size_t, std::size_t)>;

    Control(std::vector<double> times, EvalFn eval)
        : times_(std::make_shared<const std::vector<double>>(std::move(times))),
          eval_(std::move(eval)) {
        if (times_->size() < 2) throw std::invalid_argument("Control: need at least 2 grid points");
    }

    double operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        if (i > j || j >= times_->size())
            throw std::invalid_argument("Control: require i <= j within the grid");
        return eval_(i, j);
    }

    std::size_t size() const { return times_->size(); }
    const std::vector<double>& times() const { return *times_; }

private:
    std::shared_ptr<const std::vector<double>> times_;
    EvalFn eval_;
};

/// Zero control, the neutral element for sums.
inline Control zero_control(std::vector<double> times) {
    return Control(std::move(times), [](std::size_t, std::size_t) { return 0.0; });
}

namespace detail {

inline void require_same_grid(const Control& a, const Control& b) {
    if (a.times() != b.times()) throw std::invalid_argument("controls live on different grids");
}

/// Per-start-row cache of the partition DP
///   M(i, j) = max_{i <= k < j} ( M(i, k) + |g_{k j}|^q ),  M(i, i) = 0,
/// which is the exact q-power variation of the grid object over [t_i, t_j]
/// (the supremum over partitions through grid points). Valid for any q > 0;
/// the public p-variation surface restricts to q >= 1.
class PVarTable {
public:
    PVarTable(std::size_t n, std::function<double(std::size_t, std::size_t)> abs_g, double q)
        : n_(n), abs_g_(std::move(abs_g)), q_(q), rows_(n) {}

    double value(std::size_t i, std::size_t j) {
        std::scoped_lock lock(mu_);
        auto& row = rows_[i];
        if (row.empty()) {
            row.assign(n_ - i, 0.0);
            for (std::size_t j2 = i + 1; j2 < n_; ++j2) {
                double best = 0.0;
                for (std::size_t k = i; k < j2; ++k)
                    best = std::max(best, row[k - i] + std::pow(std::abs(abs_g_(k, j2)), q_));
                row[j2 - i] = best;
            }
        }
        return row[j - i];
    }

private:
    std::size_t n_;
    std::function<double(std::size_t, std::size_t)> abs_g_;
    double q_;
    std::vector<std::vector<double>> rows_;
    std::mutex mu_;
};

inline Control pvar_control(std::vector<double> times,
                            std::function<double(std::size_t, std::size_t)> abs_g, double q) {
    auto table = std::make_shared<PVarTable>(times.size(), std::move(abs_g), q);
    return Control(std::move(times),
                   [table](std::size_t i, std::size_t j) { return table->value(i, j); });
}

}  // namespace detail

/// p-variation of a 2-index map, as the norm plus the full control
/// omega_g(i, j) = ||g||^p over [t_i, t_j].
struct PVarResult {
    double norm;
    Control control;
    double p;
};

/// abs_g(i, j) must return |g_{t_i t_j}| (any fixed norm; Euclidean for
/// vector values, Frobenius for level-2 blocks).
inline PVarResult pvar_2index(std::vector<double> times,
                              std::function<double(std::size_t, std::size_t)> abs_g, double p) {
    if (p < 1.0) throw std::invalid_argument("pvar_2index: exponent p must be >= 1");
    Control c = detail::pvar_control(std::move(times), std::move(abs_g), p);
    double norm = std::pow(c(0, c.size() - 1), 1.0 / p);
    return PVarResult{norm, std::move(c), p};
}

/// p-variation of a path: delegates to the 2-index form with g = delta y.
inline PVarResult pvar_path(const GridPath& y, double p) {
    auto yp = std::make_shared<GridPath>(y);
    auto abs_dy = [yp](std::size_t i, std::size_t j) {
        double s = 0.0;
        auto a = yp->value(i), b = yp->value(j);
        for (std::size_t c = 0; c < yp->dim(); ++c) s += (b[c] - a[c]) * (b[c] - a[c]);
        return std::sqrt(s);
    };
    return pvar_2index(y.times(), abs_dy, p);
}

/// Max over grid triples of omega(i,k) + omega(k,j) - omega(i,j). A valid
/// control stays at or below roundoff.
inline double superadditivity_defect(const Control& c) {
    std::size_t n = c.size();
    if (n < 3) return 0.0;
    double defect = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k + 1; j < n; ++j)
                defect = std::max(defect, c(i, k) + c(k, j) - c(i, j));
    return defect;
}

/// Sum of controls is a control.
inline Control operator+(const Control& a, const Control& b) {
    detail::require_same_grid(a, b);
    return Control(a.times(), [a, b](std::size_t i, std::size_t j) { return a(i, j) + b(i, j); });
}

/// omega^theta is a control for theta >= 1.
inline Control pow(const Control& a, double theta) {
    if (theta < 1.0) throw std::invalid_argument("pow(Control): exponent must be >= 1");
    return Control(a.times(),
                   [a, theta](std::size_t i, std::size_t j) { return std::pow(a(i, j), theta); });
}

enum class ControlOp { sum, max_power_mix };

/// The two combinations the estimates actually use: a + b, and the mixed
/// form a + b^theta.
inline Control control_algebra(const Control& a, const Control& b, ControlOp op,
                               double theta = 3.0) {
    switch (op) {
        case ControlOp::sum:
            return a + b;
        case ControlOp::max_power_mix:
            return a + pow(b, theta);
    }
    throw std::invalid_argument("control_algebra: unknown op");
}

}  // namespace rrde
