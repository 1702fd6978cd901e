#pragma once

#include "ffcs/error.hpp"
#include "ffcs/model.hpp"
#include "ffcs/solver.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ffcs {

/// Max |coarse_i - fine_{2i}| over the nodes the two grids share.
inline double max_error(std::span<const double> coarse, std::span<const double> fine) {
    if (coarse.size() < 2 || fine.size() != 2 * (coarse.size() - 1) + 1)
        throw Error(ErrorCode::GridMismatch, "fine grid (" + std::to_string(fine.size()) +
                                                 " nodes) is not a 2x refinement of coarse grid (" +
                                                 std::to_string(coarse.size()) + " nodes)");
    double e = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) e = std::max(e, std::abs(coarse[i] - fine[2 * i]));
    return e;
}

/// log2(E_coarse / E_fine).
inline double convergence_rate(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0))
        throw Error(ErrorCode::NonpositiveError, "convergence rate needs positive errors");
    return std::log2(e_coarse / e_fine);
}

struct RefinementLevel {
    double h = 0.0;
    double k = 0.0;
    double max_error = 0.0;          ///< against the next finer level; 0 on the finest
    double seconds_per_step = 0.0;
    std::size_t steps = 0;
};

struct RefinementStudy {
    std::vector<RefinementLevel> levels;
    std::vector<double> rates;
};

/// Solves on each h with k = h^2 and compares regime-1 u at the final time between
/// consecutive levels. h_list must halve from one entry to the next.
inline RefinementStudy refinement_study(const RegimeModel& model, SolverConfig config, std::span<const double> h_list) {
    for (std::size_t l = 1; l < h_list.size(); ++l)
        if (std::abs(h_list[l] - 0.5 * h_list[l - 1]) > 1e-12 * h_list[l - 1])
            throw Error(ErrorCode::GridMismatch, "step sizes must halve from one level to the next");

    RefinementStudy study;
    std::vector<std::vector<double>> finals;
    const double x_max = config.grid.x_max > 0.0 ? config.grid.x_max : 3.0;
    for (double h : h_list) {
        config.grid = GridSpec::with_square_time_step(x_max, h, model.expiry);
        const auto r = solve(model, config);
        finals.push_back(r.states.front().u);
        study.levels.push_back({config.grid.h, config.grid.k, 0.0,
                                config.grid.N ? r.wall_time / static_cast<double>(config.grid.N) : 0.0,
                                config.grid.N});
    }
    for (std::size_t l = 0; l + 1 < finals.size(); ++l) study.levels[l].max_error = max_error(finals[l], finals[l + 1]);
    for (std::size_t l = 0; l + 2 < finals.size(); ++l)
        study.rates.push_back(convergence_rate(study.levels[l].max_error, study.levels[l + 1].max_error));
    return study;
}

/// Symbols of the decoupled amplification matrix for one Fourier mode, and the
/// moduli of its four eigenvalues.
struct AmplificationSpectrum {
    double p = 0, q = 0, r = 0, s = 0;
    std::array<double, 4> moduli{};

    [[nodiscard]] double max_modulus() const noexcept {
        double m = 0.0;
        for (double v : moduli) m = std::max(m, v);
        return m;
    }
};

/// mu = sigma^2 k/(4h^2), kappa = (r - q_mm)k, omega_k = omega*k, beta_h = beta*h.
inline AmplificationSpectrum amplification_spectrum(double mu, double kappa, double omega_k, double beta_h, double h) {
    if (!(mu > 0.0)) throw Error(ErrorCode::NonpositiveMu, "mu must be positive");
    const double sn = std::sin(0.5 * beta_h);
    const double s2 = sn * sn;
    AmplificationSpectrum a;
    a.p = 1.0 - s2 / 3.0 + 4.0 * mu * s2 + 0.5 * kappa - 0.5 * kappa * s2;
    a.q = 1.0 - s2 / 3.0 - 4.0 * mu * s2 + 0.5 * kappa - 0.5 * kappa * s2;
    a.r = -2.0 * omega_k / (h * h) * s2;
    a.s = omega_k * (0.5 - s2 / 6.0);

    const double repeated = std::abs(a.q / a.p);
    const double varpi = std::max(0.0, -a.r * a.s);
    const double pair = std::sqrt((a.q * a.q + varpi) / (a.p * a.p + varpi));
    a.moduli = {repeated, repeated, pair, pair};
    return a;
}

/// Number of time levels at which s_f of regime m rises; 0 for a boundary that never increases.
inline std::size_t boundary_increases(const BoundaryHistory& history, std::size_t m, double tol = 1e-12) {
    const auto& v = history.values.at(m);
    std::size_t n = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] + tol) ++n;
    return n;
}

}  // namespace ffcs
