#pragma once

#include "ffcs/error.hpp"
#include "ffcs/interp.hpp"
#include "ffcs/model.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ffcs {

/// Transformed-space time derivatives of u, w, y on the grid.
struct GreeksField {
    std::vector<double> theta, delta_decay, color;

    static GreeksField zeros(std::size_t n) { return {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)}; }
};

/// Up to three consecutive time levels of one field; `older` is empty at the first step.
struct TimeLevels {
    std::span<const double> older, previous, current;
};

/// Backward difference in time: first order at level 1, three-level second order after.
inline std::vector<double> backward_difference(const TimeLevels& f, double k, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InsufficientHistory, "time derivative needs n >= 1");
    const std::size_t len = f.current.size();
    if (f.previous.size() != len) throw Error(ErrorCode::DimensionMismatch, "time levels differ in length");
    std::vector<double> d(len);
    if (n == 1) {
        for (std::size_t i = 0; i < len; ++i) d[i] = (f.current[i] - f.previous[i]) / k;
        return d;
    }
    if (f.older.size() != len) throw Error(ErrorCode::InsufficientHistory, "second-order difference needs three levels");
    for (std::size_t i = 0; i < len; ++i) d[i] = (3.0 * f.current[i] - 4.0 * f.previous[i] + f.older[i]) / (2.0 * k);
    return d;
}

/// Same rule applied to a scalar series.
inline double backward_difference(double older, double previous, double current, double k, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InsufficientHistory, "time derivative needs n >= 1");
    if (n == 1) return (current - previous) / k;
    return (3.0 * current - 4.0 * previous + older) / (2.0 * k);
}

inline GreeksField update_time_greeks(const TimeLevels& u, const TimeLevels& w, const TimeLevels& y, double k,
                                      std::size_t n) {
    return {backward_difference(u, k, n), backward_difference(w, k, n), backward_difference(y, k, n)};
}

/// Greeks of V(S) in asset space at one spot price.
struct PhysicalGreeks {
    double delta = 0, gamma = 0, speed = 0, theta = 0, delta_decay = 0, color = 0;
};

/// Converts transformed fields to asset-space Greeks at S. theta, delta_decay and
/// color are derivatives in time to expiry; s_f_slope is d(ln s_f)/dtau.
inline PhysicalGreeks to_physical(const RegimeState& state, const GreeksField& greeks, double s_f_slope, double S,
                                  [[maybe_unused]] double strike, const GridSpec& grid) {
    if (!(S > 0.0)) throw Error(ErrorCode::NonpositiveAsset, "asset price must be positive");
    if (S <= state.s_f) return {-1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    const double x = std::log(S / state.s_f);
    if (x > grid.x_max) return {};

    const auto z_slope = z_derivative(state.z, grid.h);
    const auto color_slope = z_derivative(greeks.color, grid.h);
    const double W = hermite_at(state.w, state.y, x, grid);
    const double Y = hermite_at(state.y, state.z, x, grid);
    const double Z = hermite_at(state.z, z_slope, x, grid);
    const double Th = hermite_at(greeks.theta, greeks.delta_decay, x, grid);
    const double Kd = hermite_at(greeks.delta_decay, greeks.color, x, grid);
    const double Gm = hermite_at(greeks.color, color_slope, x, grid);

    PhysicalGreeks g;
    g.delta = W / S;
    g.gamma = (Y - W) / (S * S);
    g.speed = (2.0 * W - 3.0 * Y + Z) / (S * S * S);
    g.theta = Th - s_f_slope * W;
    g.delta_decay = (Kd - s_f_slope * Y) / S;
    g.color = (Gm - Kd + s_f_slope * (Y - Z)) / (S * S);
    return g;
}

}  // namespace ffcs
