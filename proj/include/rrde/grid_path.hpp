#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rrde/linalg.hpp"

namespace rrde {

/// A vector-valued path sampled on a finite, strictly increasing time grid.
/// Values are stored row-major: point k occupies [k*dim, (k+1)*dim).
/// Immutable after construction.
class GridPath {
public:
    GridPath(std::vector<double> times, std::size_t dim, std::vector<double> data)
        : times_(std::move(times)), dim_(dim), data_(std::move(data)) {
        if (times_.size() < 2)
            throw std::invalid_argument("GridPath: need at least 2 grid points");
        if (dim_ == 0) throw std::invalid_argument("GridPath: dimension must be positive");
        if (data_.size() != times_.size() * dim_)
            throw std::invalid_argument("GridPath: times/values length mismatch");
        for (std::size_t k = 0; k + 1 < times_.size(); ++k)
            if (!(times_[k] < times_[k + 1]))
                throw std::invalid_argument("GridPath: times must be strictly increasing");
    }

    static GridPath scalar(std::vector<double> times, std::vector<double> values) {
        return GridPath(std::move(times), 1, std::move(values));
    }

    std::size_t size() const { return times_.size(); }
    std::size_t dim() const { return dim_; }
    double time(std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }
    std::span<const double> data() const { return data_; }

    std::span<const double> value(std::size_t k) const {
        return std::span<const double>(data_).subspan(k * dim_, dim_);
    }
    double value(std::size_t k, std::size_t c) const { return data_[k * dim_ + c]; }

    double scalar_value(std::size_t k) const {
        if (dim_ != 1) throw std::logic_error("GridPath: scalar access on vector path");
        return data_[k];
    }

    /// Single component as a scalar path on the same grid.
    GridPath component(std::size_t c) const {
        if (c >= dim_) throw std::out_of_range("GridPath: component index");
        std::vector<double> v(size());
        for (std::size_t k = 0; k < size(); ++k) v[k] = value(k, c);
        return GridPath(times_, 1, std::move(v));
    }

    /// Keep every stride-th grid point (last point must be hit exactly).
    GridPath subsample(std::size_t stride) const {
        if (stride == 0 || (size() - 1) % stride != 0)
            throw std::invalid_argument("GridPath: interval count not divisible by stride");
        std::size_t m = (size() - 1) / stride + 1;
        std::vector<double> t(m);
        std::vector<double> v(m * dim_);
        for (std::size_t k = 0; k < m; ++k) {
            t[k] = times_[k * stride];
            auto src = value(k * stride);
            for (std::size_t c = 0; c < dim_; ++c) v[k * dim_ + c] = src[c];
        }
        return GridPath(std::move(t), dim_, std::move(v));
    }

private:
    std::vector<double> times_;
    std::size_t dim_;
    std::vector<double> data_;
};

/// t_k = k*h with h = T/n_steps; exact dyadic values when n_steps is a
/// power of two and T = 1.
inline std::vector<double> uniform_times(std::size_t n_steps, double T = 1.0) {
    if (n_steps == 0) throw std::invalid_argument("uniform_times: n_steps must be positive");
    double h = T / static_cast<double>(n_steps);
    std::vector<double> t(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) t[k] = static_cast<double>(k) * h;
    return t;
}

/// Sample fn(t) on a uniform grid over [0, T].
inline GridPath sample_path(std::size_t n_steps, std::size_t dim,
                            const std::function<void(double, std::span<double>)>& fn,
                            double T = 1.0) {
    auto times = uniform_times(n_steps, T);
    std::vector<double> data((n_steps + 1) * dim);
    for (std::size_t k = 0; k <= n_steps; ++k)
        fn(times[k], std::span<double>(data).subspan(k * dim, dim));
    return GridPath(std::move(times), dim, std::move(data));
}

/// Brownian driver sampled on the uniform grid over [0, 1]: independent
/// Gaussian increments with variance equal to the step width, anchored at
/// the origin. Deterministic for a fixed seed (fixed engine and stream
/// order: increments are drawn time-major, component-minor).
inline GridPath brownian_driver(std::size_t n_steps, std::size_t dim, std::uint64_t seed) {
    if (n_steps < 1) throw std::invalid_argument("brownian_driver: n_steps must be >= 1");
    if (dim < 1) throw std::invalid_argument("brownian_driver: dim must be >= 1");
    auto times = uniform_times(n_steps, 1.0);
    double sd = std::sqrt(1.0 / static_cast<double>(n_steps));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sd);
    std::vector<double> data((n_steps + 1) * dim, 0.0);
    for (std::size_t k = 0; k < n_steps; ++k)
        for (std::size_t c = 0; c < dim; ++c)
            data[(k + 1) * dim + c] = data[k * dim + c] + gauss(rng);
    return GridPath(std::move(times), dim, std::move(data));
}

}  // namespace rrde
