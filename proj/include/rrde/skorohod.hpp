#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rrde/grid_path.hpp"

namespace rrde {

enum class ReflectionDomain { half_line, orthant };

/// Solution of the discrete Skorohod problem: y = g + m at every grid
/// point, y nonnegative (componentwise), m nondecreasing with m_0 = 0, and
/// mass added at step k only when the reflected state y_{t_{k+1}} sits at 0.
struct ReflectionOutput {
    GridPath y;
    GridPath m;
    ReflectionDomain domain;
};

namespace detail {

// Running-max construction: m_k = max(0, max_{j<=k} -g_j). Whenever m
// increases, m_{k} = -g_{k} so y_k = g_k + m_k is exactly zero.
inline void reflect_component(const GridPath& g, std::size_t c, std::vector<double>& y,
                              std::vector<double>& m, std::size_t dim) {
    double running = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        running = std::max(running, -g.value(k, c));
        m[k * dim + c] = running;
        y[k * dim + c] = g.value(k, c) + running;
    }
}

}  // namespace detail

/// One-dimensional reflection at 0 of a driver with g_0 >= 0.
inline ReflectionOutput skorohod_1d(const GridPath& g) {
    if (g.dim() != 1) throw std::invalid_argument("skorohod_1d: driver must be scalar");
    if (g.scalar_value(0) < 0.0)
        throw std::invalid_argument("skorohod_1d: initial value must be nonnegative");
    std::vector<double> y(g.size()), m(g.size());
    detail::reflect_component(g, 0, y, m, 1);
    return ReflectionOutput{GridPath(g.times(), 1, std::move(y)),
                            GridPath(g.times(), 1, std::move(m)), ReflectionDomain::half_line};
}

/// Componentwise reflection into the closed orthant (reflection on the
/// hyperplanes {x_c = 0}; the orthant's normal cone decomposes).
inline ReflectionOutput skorohod_orthant(const GridPath& g) {
    for (std::size_t c = 0; c < g.dim(); ++c)
        if (g.value(0, c) < 0.0)
            throw std::invalid_argument("skorohod_orthant: initial value outside the orthant");
    std::vector<double> y(g.size() * g.dim()), m(g.size() * g.dim());
    for (std::size_t c = 0; c < g.dim(); ++c) detail::reflect_component(g, c, y, m, g.dim());
    return ReflectionOutput{GridPath(g.times(), g.dim(), std::move(y)),
                            GridPath(g.times(), g.dim(), std::move(m)),
                            g.dim() == 1 ? ReflectionDomain::half_line : ReflectionDomain::orthant};
}

struct SkorohodBoundReport {
    double max_ratio;
    bool pass;
};

/// A-priori bound on the reflection measure: delta m_{st} <= 8 ||g||_{0,[s,t]}
/// with ||g||_0 the oscillation sup_{s<=u<v<=t} |delta g_{uv}|. Returns the
/// worst ratio over all grid pairs and components (0/0 counts as 0).
inline SkorohodBoundReport check_skorohod_bound(const GridPath& g, const ReflectionOutput& out) {
    if (g.size() != out.m.size() || g.dim() != out.m.dim())
        throw std::invalid_argument("check_skorohod_bound: mismatched driver and output");
    double worst = 0.0;
    for (std::size_t c = 0; c < g.dim(); ++c) {
        for (std::size_t s = 0; s + 1 < g.size(); ++s) {
            double lo = g.value(s, c), hi = lo;
            for (std::size_t t = s + 1; t < g.size(); ++t) {
                lo = std::min(lo, g.value(t, c));
                hi = std::max(hi, g.value(t, c));
                double dm = out.m.value(t, c) - out.m.value(s, c);
                double osc = hi - lo;
                if (dm <= 0.0) continue;
                worst = std::max(worst, osc > 0.0 ? dm / osc
                                                  : std::numeric_limits<double>::infinity());
            }
        }
    }
    return SkorohodBoundReport{worst, worst <= 8.0};
}

/// Sup-norm Lipschitz ratio ||y1 - y2||_inf / ||g1 - g2||_inf of the
/// reflection map on two admissible drivers over the same grid (0/0 -> 0).
/// The one-dimensional map satisfies ratio <= 2.
inline double check_lipschitz(const GridPath& g1, const GridPath& g2) {
    if (g1.times() != g2.times() || g1.dim() != g2.dim())
        throw std::invalid_argument("check_lipschitz: drivers must share a grid");
    ReflectionOutput o1 = skorohod_orthant(g1);
    ReflectionOutput o2 = skorohod_orthant(g2);
    double dy = 0.0, dg = 0.0;
    for (std::size_t k = 0; k < g1.size(); ++k)
        for (std::size_t c = 0; c < g1.dim(); ++c) {
            dy = std::max(dy, std::abs(o1.y.value(k, c) - o2.y.value(k, c)));
            dg = std::max(dg, std::abs(g1.value(k, c) - g2.value(k, c)));
        }
    if (dy == 0.0) return 0.0;
    if (dg == 0.0) return std::numeric_limits<double>::infinity();
    return dy / dg;
}

/// The multidimensional-domain measure bound
///   Psi(lambda) = C1 [e^{p C2 (1 + lambda^{1/p})} lambda + 1]
///                 (e^{C2 (1 + lambda^{1/p})} + 1) lambda^{1/p},
/// evaluated as written. C1, C2 depend only on the domain and are supplied
/// by the caller; the function is a diagnostic, not an enforced bound.
inline double psi_bound(double lambda, double p, double C1, double C2) {
    if (lambda < 0.0) throw std::invalid_argument("psi_bound: lambda must be nonnegative");
    if (!(p >= 2.0 && p < 3.0)) throw std::invalid_argument("psi_bound: p must lie in [2,3)");
    if (C1 <= 0.0 || C2 <= 0.0) throw std::invalid_argument("psi_bound: constants must be positive");
    double r = std::pow(lambda, 1.0 / p);
    return C1 * (std::exp(p * C2 * (1.0 + r)) * lambda + 1.0) * (std::exp(C2 * (1.0 + r)) + 1.0) * r;
}

/// G_I(lambda) = Psi(C_fp (1 + omega_X(I) lambda^p)) for user-supplied
/// C_fp and omega_X(I).
inline double psi_gi_bound(double lambda, double p, double C1, double C2, double c_fp,
                           double omega_x_interval) {
    if (lambda < 0.0) throw std::invalid_argument("psi_gi_bound: lambda must be nonnegative");
    if (c_fp <= 0.0 || omega_x_interval < 0.0)
        throw std::invalid_argument("psi_gi_bound: invalid constants");
    return psi_bound(c_fp * (1.0 + omega_x_interval * std::pow(lambda, p)), p, C1, C2);
}

}  // namespace rrde
