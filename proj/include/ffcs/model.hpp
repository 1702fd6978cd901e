#pragma once

#include "ffcs/error.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ffcs {

/// Row-sum tolerance accepted by validate_generator.
inline constexpr double kGeneratorRowSumTolerance = 1e-12;

/// Transition-rate matrix of the regime Markov chain (row-major, I x I).
class GeneratorMatrix {
public:
    GeneratorMatrix() = default;

    [[nodiscard]] std::size_t num_regimes() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t m, std::size_t l) const { return entries_[m * n_ + l]; }
    [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }

    [[nodiscard]] std::vector<std::vector<double>> rows() const {
        std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
        for (std::size_t m = 0; m < n_; ++m)
            for (std::size_t l = 0; l < n_; ++l) out[m][l] = (*this)(m, l);
        return out;
    }

    friend GeneratorMatrix validate_generator(const std::vector<std::vector<double>>& entries);

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// Checks q_ml >= 0 off the diagonal and zero row sums.
inline GeneratorMatrix validate_generator(const std::vector<std::vector<double>>& entries) {
    const std::size_t n = entries.size();
    if (n == 0) throw Error(ErrorCode::InvalidModel, "generator matrix is empty");
    GeneratorMatrix g;
    g.n_ = n;
    g.entries_.reserve(n * n);
    for (std::size_t m = 0; m < n; ++m) {
        if (entries[m].size() != n)
            throw Error(ErrorCode::DimensionMismatch,
                        "generator row " + std::to_string(m + 1) + " has " +
                            std::to_string(entries[m].size()) + " entries, expected " + std::to_string(n));
        double sum = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            const double q = entries[m][l];
            if (!std::isfinite(q))
                throw Error(ErrorCode::InvalidModel, "generator entry is not finite in row " + std::to_string(m + 1));
            if (l != m && q < 0.0)
                throw Error(ErrorCode::NegativeOffDiagonal,
                            "q[" + std::to_string(m + 1) + "][" + std::to_string(l + 1) + "] = " + std::to_string(q));
            sum += q;
            g.entries_.push_back(q);
        }
        if (std::abs(sum) > kGeneratorRowSumTolerance)
            throw Error(ErrorCode::RowSumViolation,
                        "row " + std::to_string(m + 1) + " sums to " + std::to_string(sum));
    }
    return g;
}

/// Market parameters for an American put under regime switching.
struct RegimeModel {
    std::vector<double> rates;  ///< r_m per regime
    std::vector<double> vols;   ///< sigma_m per regime
    GeneratorMatrix generator;
    double strike = 0.0;
    double expiry = 0.0;

    [[nodiscard]] std::size_t num_regimes() const noexcept { return generator.num_regimes(); }

    /// Throws InvalidModel on inconsistent sizes or out-of-range parameters.
    void validate() const {
        const std::size_t n = generator.num_regimes();
        if (n == 0) throw Error(ErrorCode::InvalidModel, "no regimes");
        if (rates.size() != n || vols.size() != n)
            throw Error(ErrorCode::InvalidModel, "rates/vols length must equal the number of regimes (" +
                                                     std::to_string(n) + ")");
        for (std::size_t m = 0; m < n; ++m) {
            if (!(vols[m] > 0.0)) throw Error(ErrorCode::InvalidModel, "volatility must be positive in regime " + std::to_string(m + 1));
            if (!(rates[m] >= 0.0)) throw Error(ErrorCode::InvalidModel, "rate must be nonnegative in regime " + std::to_string(m + 1));
        }
        if (!(strike > 0.0)) throw Error(ErrorCode::InvalidModel, "strike must be positive");
        if (!(expiry > 0.0)) throw Error(ErrorCode::InvalidModel, "expiry must be positive");
    }
};

/// Uniform mesh in log-moneyness and time to expiry.
struct GridSpec {
    double x_max = 3.0;
    double h = 0.0;
    double k = 0.0;
    std::size_t M = 0;
    std::size_t N = 0;

    /// h = x_max / M, k = expiry / N.
    static GridSpec uniform(double x_max, std::size_t M, double expiry, std::size_t N) {
        if (!(x_max > 0.0)) throw Error(ErrorCode::InvalidGrid, "x_max must be positive");
        if (M < 4) throw Error(ErrorCode::InvalidGrid, "M must be at least 4");
        if (!(expiry > 0.0)) throw Error(ErrorCode::InvalidGrid, "expiry must be positive");
        GridSpec g;
        g.x_max = x_max;
        g.M = M;
        g.N = N;
        g.h = x_max / static_cast<double>(M);
        g.k = N > 0 ? expiry / static_cast<double>(N) : 0.0;
        return g;
    }

    /// Grid with space step close to h (M = round(x_max/h)) and k = h^2, N = round(T/h^2).
    static GridSpec with_square_time_step(double x_max, double h, double expiry) {
        const auto M = static_cast<std::size_t>(std::llround(x_max / h));
        const auto N = static_cast<std::size_t>(std::llround(expiry / (h * h)));
        return uniform(x_max, M, expiry, N);
    }

    /// Grid with space step close to h and time step close to k.
    static GridSpec with_steps(double x_max, double h, double k, double expiry) {
        const auto M = static_cast<std::size_t>(std::llround(x_max / h));
        const auto N = static_cast<std::size_t>(std::llround(expiry / k));
        return uniform(x_max, M, expiry, N);
    }

    [[nodiscard]] double node(std::size_t i) const noexcept { return static_cast<double>(i) * h; }
};

/// Transformed price, delta, gamma and speed on the grid of one regime.
struct RegimeState {
    std::vector<double> u, w, y, z;
    double s_f = 0.0;
    double s_f_prev = 0.0;
};

/// s_f(m)(tau_n) for every regime (row) and time level (column).
struct BoundaryHistory {
    std::size_t num_regimes = 0;
    std::vector<std::vector<double>> values;  ///< values[m][n]

    [[nodiscard]] std::size_t num_levels() const noexcept { return values.empty() ? 0 : values.front().size(); }
};

/// Drift coefficient shared by the four schemes: log boundary velocity + r - sigma^2/2.
inline double omega(double s_f_new, double s_f_old, double k, double r, double sigma) {
    if (!(s_f_new > 0.0) || !(s_f_old > 0.0))
        throw Error(ErrorCode::NonpositiveBoundary, "omega requires positive boundaries");
    return 2.0 * (s_f_new - s_f_old) / (k * (s_f_new + s_f_old)) + r - 0.5 * sigma * sigma;
}

/// How y and z are pinned at x = 0.
enum class BoundaryClosure {
    /// Limits from the continuation side, implied by the u and w equations at x = 0.
    Continuation,
    /// y = z = -s_f, the exercise-side values.
    Exercise,
};

struct BoundaryDerivatives {
    double y0, z0;
};

/// Continuation-side U_xx(0) and U_xxx(0) from the u and w equations at x = 0.
/// coupling_u0 / coupling_w0 are sum_{l != m} q_ml u_l and q_ml w_l at the home node 0.
inline BoundaryDerivatives continuation_boundary(const RegimeModel& model, std::size_t m, double s_f, double omega,
                                                 double coupling_u0, double coupling_w0) {
    const double r = model.rates[m];
    const double sig2 = model.vols[m] * model.vols[m];
    const double q_mm = model.generator(m, m);
    const double K = model.strike;
    const double y0 = -s_f + 2.0 / sig2 * (r * K - q_mm * (K - s_f) - coupling_u0);
    const double s_rate = s_f * (omega - r + 0.5 * sig2);
    const double z0 = 2.0 / sig2 * (-s_rate - omega * y0 - (r - q_mm) * s_f - coupling_w0);
    return {y0, z0};
}

/// d omega / d s_f_new.
inline double omega_boundary_derivative(double s_f_new, double s_f_old, double k) {
    const double sum = s_f_new + s_f_old;
    return 4.0 * s_f_old / (k * sum * sum);
}

/// Closed-form (u, w, y, z) in the exercise region x <= 0.
struct ExerciseValues {
    double u, w, y, z;
};

inline ExerciseValues exercise_region_values(double s_f, double x, double strike) {
    const double se = s_f * std::exp(x);
    return {strike - se, -se, -se, -se};
}

/// Zero fields with s_f = K in every regime; the corner w(0,0) is taken as 0.
inline std::vector<RegimeState> initial_state(const RegimeModel& model, const GridSpec& grid) {
    std::vector<RegimeState> states(model.num_regimes());
    for (auto& s : states) {
        s.u.assign(grid.M + 1, 0.0);
        s.w.assign(grid.M + 1, 0.0);
        s.y.assign(grid.M + 1, 0.0);
        s.z.assign(grid.M + 1, 0.0);
        s.s_f = model.strike;
        s.s_f_prev = model.strike;
    }
    return states;
}

}  // namespace ffcs
