#pragma once

#include "ffcs/error.hpp"
#include "ffcs/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ffcs {

enum class Interpolation { Cubic, Quintic };

enum class Branch { Left, Interior, Right };

/// Shift between the coordinate frames of two regimes: x_l = x_m - log_ratio.
struct FrameMap {
    double log_ratio = 0.0;

    static FrameMap between(double s_f_l, double s_f_m) {
        if (!(s_f_l > 0.0) || !(s_f_m > 0.0))
            throw Error(ErrorCode::NonpositiveBoundary, "frame map requires positive boundaries");
        return {std::log(s_f_l / s_f_m)};
    }

    [[nodiscard]] double apply(double x_m) const noexcept { return x_m - log_ratio; }
};

struct MappedPoint {
    double x_l = 0.0;
    std::size_t bracket = 0;  ///< left node j of [x_j, x_{j+1}] (interior branch only)
    Branch branch = Branch::Interior;
};

/// Classifies a foreign-frame coordinate against the grid [0, x_max].
inline MappedPoint classify(double x_l, const GridSpec& grid) noexcept {
    MappedPoint p;
    p.x_l = x_l;
    if (x_l <= 0.0) {
        p.branch = Branch::Left;
    } else if (x_l > grid.x_max) {
        p.branch = Branch::Right;
    } else {
        const double cell = std::floor(x_l / grid.h);
        const auto j = cell < 0.0 ? std::size_t{0} : static_cast<std::size_t>(cell);
        p.bracket = std::min(j, grid.M - 1);
        p.branch = Branch::Interior;
    }
    return p;
}

inline MappedPoint map_point(double x_m, double s_f_l, double s_f_m, const GridSpec& grid) {
    return classify(FrameMap::between(s_f_l, s_f_m).apply(x_m), grid);
}

/// Two-node Hermite basis on [x_j, x_j + h]: a,b weight the values, c,d the slopes.
/// da..dd are the same basis differentiated once in x.
struct CubicWeights {
    double a_c = 0, b_c = 0, c_c = 0, d_c = 0;
    double da = 0, db = 0, dc = 0, dd = 0;
};

inline CubicWeights cubic_weights(double x_star, double x_j, double h) {
    const double t = (x_star - x_j) / h;
    constexpr double slack = 1e-12;
    if (t < -slack || t > 1.0 + slack)
        throw Error(ErrorCode::OutOfBracket, "cubic Hermite point outside [x_j, x_j + h]");
    const double omt = 1.0 - t;
    CubicWeights wt;
    wt.a_c = (1.0 + 2.0 * t) * omt * omt;
    wt.b_c = (3.0 - 2.0 * t) * t * t;
    wt.c_c = h * t * omt * omt;
    wt.d_c = -h * omt * t * t;
    wt.da = -6.0 * t * omt / h;
    wt.db = 6.0 * t * omt / h;
    wt.dc = omt * (1.0 - 3.0 * t);
    wt.dd = t * (3.0 * t - 2.0);
    return wt;
}

/// Three-node Hermite basis centred on x_j with nodes x_j - h, x_j, x_j + h.
/// a..f weight (f_{j-1}, f_j, f_{j+1}, f'_{j-1}, f'_j, f'_{j+1}) for the value;
/// g..s weight the same data for the first derivative.
struct QuinticWeights {
    double a_q = 0, b_q = 0, c_q = 0, d_q = 0, e_q = 0, f_q = 0;
    double g_q = 0, o_q = 0, p_q = 0, q_q = 0, r_q = 0, s_q = 0;
};

inline QuinticWeights quintic_weights(double x_star, double x_j, double h) {
    const double s = (x_star - x_j) / h;
    constexpr double slack = 1e-12;
    if (s < -1.0 - slack || s > 1.0 + slack)
        throw Error(ErrorCode::OutOfBracket, "quintic Hermite point outside [x_j - h, x_j + h]");
    // Lagrange basis on {-1, 0, 1} and its derivative in s
    const double l0 = 0.5 * s * (s - 1.0), dl0 = s - 0.5;
    const double l1 = 1.0 - s * s, dl1 = -2.0 * s;
    const double l2 = 0.5 * s * (s + 1.0), dl2 = s + 0.5;

    QuinticWeights wt;
    wt.a_q = (3.0 * s + 4.0) * l0 * l0;
    wt.b_q = l1 * l1;
    wt.c_q = (4.0 - 3.0 * s) * l2 * l2;
    wt.d_q = h * (s + 1.0) * l0 * l0;
    wt.e_q = h * s * l1 * l1;
    wt.f_q = h * (s - 1.0) * l2 * l2;

    wt.g_q = (3.0 * l0 * l0 + 2.0 * (3.0 * s + 4.0) * l0 * dl0) / h;
    wt.o_q = 2.0 * l1 * dl1 / h;
    wt.p_q = (-3.0 * l2 * l2 + 2.0 * (4.0 - 3.0 * s) * l2 * dl2) / h;
    wt.q_q = l0 * l0 + 2.0 * (s + 1.0) * l0 * dl0;
    wt.r_q = l1 * l1 + 2.0 * s * l1 * dl1;
    wt.s_q = l2 * l2 + 2.0 * (s - 1.0) * l2 * dl2;
    return wt;
}

struct CouplingSample {
    double u = 0, w = 0, y = 0, z = 0;
};

/// Fourth-order nodal derivative: centred 5-point inside, one-sided 5-point at the two
/// nodes nearest each end.
inline std::vector<double> z_derivative(std::span<const double> z, double h) {
    const std::size_t n = z.size();
    if (n < 5) throw Error(ErrorCode::GridTooSmall, "z_derivative needs at least 5 nodes");
    std::vector<double> d(n);
    const double c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * z[0] + 48.0 * z[1] - 36.0 * z[2] + 16.0 * z[3] - 3.0 * z[4]);
    d[1] = c * (-3.0 * z[0] - 10.0 * z[1] + 18.0 * z[2] - 6.0 * z[3] + z[4]);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = c * (z[i - 2] - 8.0 * z[i - 1] + 8.0 * z[i + 1] - z[i + 2]);
    const std::size_t m = n - 1;
    d[m - 1] = c * (3.0 * z[m] + 10.0 * z[m - 1] - 18.0 * z[m - 2] + 6.0 * z[m - 3] - z[m - 4]);
    d[m] = c * (25.0 * z[m] - 48.0 * z[m - 1] + 36.0 * z[m - 2] - 16.0 * z[m - 3] + 3.0 * z[m - 4]);
    return d;
}

/// Read-only view of one regime's fields for interpolation.
struct FieldView {
    std::span<const double> u, w, y, z, z_slope;
    double s_f = 0.0;
};

namespace detail {

inline double cubic_eval(const CubicWeights& wt, std::span<const double> f, std::span<const double> df,
                         std::size_t j) noexcept {
    return wt.a_c * f[j] + wt.b_c * f[j + 1] + wt.c_c * df[j] + wt.d_c * df[j + 1];
}

inline double quintic_eval(const QuinticWeights& wt, std::span<const double> f, std::span<const double> df,
                           std::size_t j) noexcept {
    return wt.a_q * f[j - 1] + wt.b_q * f[j] + wt.c_q * f[j + 1] + wt.d_q * df[j - 1] + wt.e_q * df[j] +
           wt.f_q * df[j + 1];
}

/// Interior-branch evaluation of all four fields at a mapped point.
inline CouplingSample interior_sample(const FieldView& v, const MappedPoint& p, const GridSpec& grid,
                                      Interpolation order) {
    const std::size_t j = p.bracket;
    const double x_j = grid.node(j);
    if (order == Interpolation::Quintic && j >= 1 && j + 1 <= grid.M) {
        const auto wt = quintic_weights(p.x_l, x_j, grid.h);
        return {quintic_eval(wt, v.u, v.w, j), quintic_eval(wt, v.w, v.y, j), quintic_eval(wt, v.y, v.z, j),
                quintic_eval(wt, v.z, v.z_slope, j)};
    }
    const auto wt = cubic_weights(p.x_l, x_j, grid.h);
    return {cubic_eval(wt, v.u, v.w, j), cubic_eval(wt, v.w, v.y, j), cubic_eval(wt, v.y, v.z, j),
            cubic_eval(wt, v.z, v.z_slope, j)};
}

inline CouplingSample sample_at(const FieldView& v, const MappedPoint& p, double strike, const GridSpec& grid,
                                Interpolation order) {
    switch (p.branch) {
        case Branch::Left: {
            const auto e = exercise_region_values(v.s_f, p.x_l, strike);
            return {e.u, e.w, e.y, e.z};
        }
        case Branch::Right:
            return {};
        case Branch::Interior:
            break;
    }
    return interior_sample(v, p, grid, order);
}

}  // namespace detail

/// Foreign-regime (u, w, y, z) at the point x_m of the home frame whose boundary is s_f_m.
/// Each field is Hermite-interpolated from its own nodal values and those of its
/// x-derivative (u with w, w with y, y with z, z with z_slope).
inline CouplingSample sample_coupling(const RegimeState& state_l, double x_m, double s_f_m, double strike,
                                      Interpolation order, std::span<const double> z_slope,
                                      const GridSpec& grid) {
    const std::size_t n = grid.M + 1;
    if (state_l.u.size() != n || state_l.w.size() != n || state_l.y.size() != n || state_l.z.size() != n ||
        z_slope.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "sample_coupling: field length differs from M+1");
    const FieldView v{state_l.u, state_l.w, state_l.y, state_l.z, z_slope, state_l.s_f};
    const auto p = map_point(x_m, state_l.s_f, s_f_m, grid);
    return detail::sample_at(v, p, strike, grid, order);
}

/// Accumulates weight * (foreign field sampled at every home node) into the four
/// output arrays. Used to build sum_{l != m} q_ml f_l on the home grid.
inline void accumulate_coupling(const FieldView& v, double s_f_m, double weight, double strike,
                                Interpolation order, const GridSpec& grid, std::span<double> cu,
                                std::span<double> cw, std::span<double> cy, std::span<double> cz) {
    const FrameMap map = FrameMap::between(v.s_f, s_f_m);
    // The frame shift is the same at every node, so interior weights are shared.
    const double shift = -map.log_ratio / grid.h;
    const double cell = std::floor(shift);
    const double t = shift - cell;
    const auto offset = static_cast<long long>(cell);
    const auto cubic = cubic_weights(t * grid.h, 0.0, grid.h);
    const auto quintic = quintic_weights(t * grid.h, 0.0, grid.h);
    const auto M = static_cast<long long>(grid.M);
    auto add = [&](std::size_t i, const CouplingSample& s) {
        cu[i] += weight * s.u;
        cw[i] += weight * s.w;
        cy[i] += weight * s.y;
        cz[i] += weight * s.z;
    };
    for (std::size_t i = 0; i <= grid.M; ++i) {
        const double x_l = map.apply(grid.node(i));
        if (x_l > grid.x_max) continue;
        if (x_l <= 0.0) {
            const auto e = exercise_region_values(v.s_f, x_l, strike);
            add(i, {e.u, e.w, e.y, e.z});
            continue;
        }
        const long long j = static_cast<long long>(i) + offset;
        if (j < 0 || j >= M) {
            add(i, detail::sample_at(v, classify(x_l, grid), strike, grid, order));
            continue;
        }
        const auto jj = static_cast<std::size_t>(j);
        if (order == Interpolation::Quintic && j >= 1 && j + 1 <= M) {
            add(i, {detail::quintic_eval(quintic, v.u, v.w, jj), detail::quintic_eval(quintic, v.w, v.y, jj),
                    detail::quintic_eval(quintic, v.y, v.z, jj), detail::quintic_eval(quintic, v.z, v.z_slope, jj)});
        } else {
            add(i, {detail::cubic_eval(cubic, v.u, v.w, jj), detail::cubic_eval(cubic, v.w, v.y, jj),
                    detail::cubic_eval(cubic, v.y, v.z, jj), detail::cubic_eval(cubic, v.z, v.z_slope, jj)});
        }
    }
}

/// Cubic Hermite value of f (with slope df) at x, clamped to [0, x_max].
inline double hermite_at(std::span<const double> f, std::span<const double> df, double x, const GridSpec& grid) {
    const double xc = std::clamp(x, 0.0, grid.x_max);
    const auto j = std::min(static_cast<std::size_t>(std::floor(xc / grid.h)), grid.M - 1);
    const auto wt = cubic_weights(xc, grid.node(j), grid.h);
    return detail::cubic_eval(wt, f, df, j);
}

}  // namespace ffcs
