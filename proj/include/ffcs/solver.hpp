#pragma once

#include "ffcs/anderson.hpp"
#include "ffcs/error.hpp"
#include "ffcs/greeks.hpp"
#include "ffcs/interp.hpp"
#include "ffcs/model.hpp"
#include "ffcs/scheme.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ffcs {

enum class Method { GaussSeidel, Newton };

struct SolverConfig {
    Method method = Method::GaussSeidel;
    Interpolation interpolation = Interpolation::Quintic;
    double epsilon = 1e-8;
    std::size_t max_iterations = 100;
    GridSpec grid;
    BoundaryClosure closure = BoundaryClosure::Continuation;
    /// History length for Anderson mixing of the nonlinear iterates, 0 disables it.
    std::size_t mixing_depth = 5;
    /// Newton only: solve the regimes of one iteration on separate threads.
    bool parallel = false;

    void validate() const {
        if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidModel, "epsilon must be positive");
        if (max_iterations < 1) throw Error(ErrorCode::InvalidModel, "max_iterations must be at least 1");
        if (grid.M < 4) throw Error(ErrorCode::InvalidGrid, "M must be at least 4");
        if (!(grid.h > 0.0)) throw Error(ErrorCode::InvalidGrid, "h must be positive");
    }
};

struct SolveResult {
    std::vector<RegimeState> states;
    BoundaryHistory boundary;
    std::vector<GreeksField> greeks;
    std::vector<std::size_t> iterations;  ///< per time step
    double wall_time = 0.0;               ///< seconds
    GridSpec grid;
    double strike = 0.0;

    /// d(ln s_f)/dtau at the final level, same difference order as the Greeks fields.
    [[nodiscard]] double boundary_log_slope(std::size_t m) const {
        const auto& v = boundary.values.at(m);
        const std::size_t n = v.size() - 1;
        if (n == 0) return 0.0;
        const double older = n >= 2 ? std::log(v[n - 2]) : 0.0;
        return backward_difference(older, std::log(v[n - 1]), std::log(v[n]), grid.k, n);
    }
};

namespace detail {

/// sum_{l != m} q_ml f_l on the home grid of each regime, for all four fields.
struct CouplingSums {
    std::vector<std::vector<double>> u, w, y, z;

    void resize(std::size_t regimes, std::size_t n) {
        for (auto* f : {&u, &w, &y, &z}) f->assign(regimes, std::vector<double>(n, 0.0));
    }
};

inline FieldView view_of(const RegimeState& s, const std::vector<double>& z_slope) {
    return {s.u, s.w, s.y, s.z, z_slope, s.s_f};
}

inline void coupling_for(std::size_t m, const RegimeModel& model, const std::vector<RegimeState>& states,
                         const std::vector<std::vector<double>>& z_slopes, double s_f_m, Interpolation order,
                         const GridSpec& grid, CouplingSums& out) {
    std::fill(out.u[m].begin(), out.u[m].end(), 0.0);
    std::fill(out.w[m].begin(), out.w[m].end(), 0.0);
    std::fill(out.y[m].begin(), out.y[m].end(), 0.0);
    std::fill(out.z[m].begin(), out.z[m].end(), 0.0);
    for (std::size_t l = 0; l < states.size(); ++l) {
        const double q = model.generator(m, l);
        if (l == m || q == 0.0) continue;
        accumulate_coupling(view_of(states[l], z_slopes[l]), s_f_m, q, model.strike, order, grid, out.u[m],
                            out.w[m], out.y[m], out.z[m]);
    }
}

inline void average_into(const std::vector<double>& a, const std::vector<double>& b, std::vector<double>& out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace detail

/// Advances all regimes by one time step. Holds scratch buffers reused across steps.
class TimeStepper {
public:
    TimeStepper(const RegimeModel& model, const SolverConfig& config) : model_(model), config_(config) {
        const std::size_t I = model.num_regimes(), n = config.grid.M + 1;
        level_n_.resize(I, n);
        level_next_.resize(I, n);
        z_slopes_.assign(I, std::vector<double>(n, 0.0));
        snapshot_slopes_.assign(I, std::vector<double>(n, 0.0));
        avg_.assign(I, std::vector<std::vector<double>>(4, std::vector<double>(n, 0.0)));
        for (std::size_t m = 0; m < I; ++m) coeffs_.push_back(SchemeCoefficients::make(model, m, config.grid));
    }

    /// Gauss-Seidel sweep over regimes; coupling refreshed from the latest iterates.
    /// Successive sweeps are combined by Anderson mixing. Returns the number of sweeps.
    std::size_t gs_step(std::vector<RegimeState>& states) {
        const auto& grid = config_.grid;
        const std::size_t I = states.size();
        const std::vector<RegimeState> prev = states;
        prepare_level_n(prev);

        for (std::size_t m = 0; m < I; ++m) states[m].s_f_prev = prev[m].s_f;
        AndersonMixer mixer(config_.mixing_depth);
        for (std::size_t it = 1; it <= config_.max_iterations; ++it) {
            std::vector<RegimeState> next = states;
            if (I > 1 && it > 1)
                for (std::size_t m = 0; m < I; ++m) z_slopes_[m] = z_derivative(next[m].z, grid.h);
            gs_sweep(prev, next);

            double max_ds = 0.0, max_du = 0.0;
            for (std::size_t m = 0; m < I; ++m) {
                max_ds = std::max(max_ds, std::abs(next[m].s_f - states[m].s_f));
                max_du = std::max(max_du, detail::max_abs_diff(next[m].u, states[m].u));
            }
            if (max_ds < config_.epsilon && max_du < config_.epsilon) {
                states = std::move(next);
                return it;
            }
            if (it == config_.max_iterations) no_convergence(max_ds, max_du);

            const auto mixed = mixer.mix(pack(states), pack(next));
            if (!unpack(mixed, states)) {
                mixer.reset();
                states = std::move(next);
            }
        }
        return config_.max_iterations;
    }

    /// Residual-correction iteration with the constant tridiagonal Jacobian and coupling
    /// frozen at the previous iterate: u and s_f first, then w, y, z in turn.
    /// Returns the iteration count of the u/s_f loop.
    std::size_t newton_step(std::vector<RegimeState>& states) {
        const auto& grid = config_.grid;
        const std::size_t I = states.size();
        const std::vector<RegimeState> prev = states;
        prepare_level_n(prev);
        for (std::size_t m = 0; m < I; ++m) states[m].s_f_prev = prev[m].s_f;

        std::size_t u_iterations = 0;
        std::vector<double> ds(I), du(I);
        AndersonMixer mixer(I > 1 ? config_.mixing_depth : 0);
        for (std::size_t it = 1;; ++it) {
            const std::vector<RegimeState> snapshot = states;
            refresh_snapshot_coupling(snapshot);
            for_each_regime(I, [&](std::size_t m) {
                auto& st = states[m];
                const double omega_u = omega(snapshot[m].s_f, prev[m].s_f, grid.k, model_.rates[m], model_.vols[m]);
                auto u_new = solve_value(m, prev[m], st, omega_u, /*newton=*/true);
                const double s_new = boundary_from(u_new, m);
                ds[m] = std::abs(s_new - st.s_f);
                du[m] = detail::max_abs_diff(u_new, st.u);
                st.u = std::move(u_new);
                st.s_f = s_new;
            });
            const double max_ds = *std::max_element(ds.begin(), ds.end());
            const double max_du = *std::max_element(du.begin(), du.end());
            if (max_ds < config_.epsilon && max_du < config_.epsilon) {
                u_iterations = it;
                break;
            }
            if (it == config_.max_iterations) no_convergence(max_ds, max_du);
            if (I > 1 && config_.mixing_depth > 0) mix_values(mixer, snapshot, states);
        }

        std::vector<double> omegas(I);
        for (std::size_t m = 0; m < I; ++m)
            omegas[m] = omega(states[m].s_f, prev[m].s_f, grid.k, model_.rates[m], model_.vols[m]);

        using Field = std::vector<double> RegimeState::*;
        const Field chain[3][2] = {{&RegimeState::w, &RegimeState::u},
                                   {&RegimeState::y, &RegimeState::w},
                                   {&RegimeState::z, &RegimeState::y}};
        for (std::size_t stage = 0; stage < 3; ++stage) {
            const Field f = chain[stage][0];
            const Field g = chain[stage][1];
            std::vector<std::vector<double>>* cn = stage == 0 ? &level_n_.w : stage == 1 ? &level_n_.y : &level_n_.z;
            std::vector<std::vector<double>>* cx =
                stage == 0 ? &level_next_.w : stage == 1 ? &level_next_.y : &level_next_.z;
            for (std::size_t it = 1;; ++it) {
                const std::vector<RegimeState> snapshot = states;
                refresh_snapshot_coupling(snapshot);
                for_each_regime(I, [&](std::size_t m) {
                    auto& st = states[m];
                    const auto edge = boundary_derivatives(m, st.s_f, omegas[m]);
                    const double f0 = stage == 0 ? -st.s_f : stage == 1 ? edge.y0 : edge.z0;
                    auto f_new = solve_derivative(m, prev[m].*f, prev[m].*g, st.*g, (*cn)[m], (*cx)[m], st.*f,
                                                  omegas[m], f0, true);
                    du[m] = detail::max_abs_diff(f_new, st.*f);
                    st.*f = std::move(f_new);
                });
                const double max_df = *std::max_element(du.begin(), du.end());
                if (max_df < config_.epsilon) break;
                if (it == config_.max_iterations) no_convergence(0.0, max_df);
            }
        }
        return u_iterations;
    }

private:
    void gs_sweep(const std::vector<RegimeState>& prev, std::vector<RegimeState>& states) {
        const auto& grid = config_.grid;
        const std::size_t I = states.size();
        for (std::size_t m = 0; m < I; ++m) {
            if (I > 1)
                detail::coupling_for(m, model_, states, z_slopes_, states[m].s_f, config_.interpolation, grid,
                                     level_next_);
            auto& st = states[m];
            const double omega_u = omega(st.s_f, prev[m].s_f, grid.k, model_.rates[m], model_.vols[m]);
            st.u = solve_value(m, prev[m], st, omega_u, /*newton=*/false);
            st.s_f = boundary_from(st.u, m);

            const double omega_d = omega(st.s_f, prev[m].s_f, grid.k, model_.rates[m], model_.vols[m]);
            st.w = solve_derivative(m, prev[m].w, prev[m].u, st.u, level_n_.w[m], level_next_.w[m], st.w, omega_d,
                                    -st.s_f, false);
            const auto edge = boundary_derivatives(m, st.s_f, omega_d);
            st.y = solve_derivative(m, prev[m].y, prev[m].w, st.w, level_n_.y[m], level_next_.y[m], st.y, omega_d,
                                    edge.y0, false);
            st.z = solve_derivative(m, prev[m].z, prev[m].y, st.y, level_n_.z[m], level_next_.z[m], st.z, omega_d,
                                    edge.z0, false);
            if (I > 1) z_slopes_[m] = z_derivative(st.z, grid.h);
        }
    }

    /// Anderson step on the u fields of a Jacobi sweep; keeps the plain sweep if a boundary leaves (0, K].
    void mix_values(AndersonMixer& mixer, const std::vector<RegimeState>& from, std::vector<RegimeState>& to) const {
        std::vector<double> x, g;
        for (std::size_t m = 0; m < from.size(); ++m) {
            x.insert(x.end(), from[m].u.begin(), from[m].u.end());
            g.insert(g.end(), to[m].u.begin(), to[m].u.end());
        }
        const auto mixed = mixer.mix(x, g);
        const double K = model_.strike;
        const std::size_t n = from.front().u.size();
        for (std::size_t m = 0; m < to.size(); ++m) {
            const double s = K - mixed[m * n];
            if (!(s > 0.0 && s <= K)) {
                mixer.reset();
                return;
            }
        }
        for (std::size_t m = 0; m < to.size(); ++m) {
            std::copy(mixed.begin() + static_cast<std::ptrdiff_t>(m * n),
                      mixed.begin() + static_cast<std::ptrdiff_t>((m + 1) * n), to[m].u.begin());
            to[m].s_f = K - to[m].u[0];
        }
    }

    static std::vector<double> pack(const std::vector<RegimeState>& states) {
        std::vector<double> out;
        for (const auto& st : states)
            for (const auto* f : {&st.u, &st.w, &st.y, &st.z}) out.insert(out.end(), f->begin(), f->end());
        return out;
    }

    /// Writes a mixed iterate back; false if some boundary leaves (0, K].
    bool unpack(const std::vector<double>& v, std::vector<RegimeState>& states) const {
        const double K = model_.strike;
        std::size_t pos = 0;
        for (const auto& st : states) {
            const double s = K - v[pos];
            if (!(s > 0.0 && s <= K)) return false;
            pos += 4 * st.u.size();
        }
        pos = 0;
        for (auto& st : states) {
            for (auto* f : {&st.u, &st.w, &st.y, &st.z}) {
                std::copy(v.begin() + static_cast<std::ptrdiff_t>(pos),
                          v.begin() + static_cast<std::ptrdiff_t>(pos + f->size()), f->begin());
                pos += f->size();
            }
            st.s_f = K - st.u[0];
        }
        return true;
    }

    void prepare_level_n(const std::vector<RegimeState>& prev) {
        const std::size_t I = prev.size();
        if (I == 1) return;
        for (std::size_t m = 0; m < I; ++m) z_slopes_[m] = z_derivative(prev[m].z, config_.grid.h);
        for (std::size_t m = 0; m < I; ++m)
            detail::coupling_for(m, model_, prev, z_slopes_, prev[m].s_f, config_.interpolation, config_.grid,
                                 level_n_);
    }

    void refresh_snapshot_coupling(const std::vector<RegimeState>& snapshot) {
        const std::size_t I = snapshot.size();
        if (I == 1) return;
        for (std::size_t m = 0; m < I; ++m) snapshot_slopes_[m] = z_derivative(snapshot[m].z, config_.grid.h);
        for (std::size_t m = 0; m < I; ++m)
            detail::coupling_for(m, model_, snapshot, snapshot_slopes_, snapshot[m].s_f, config_.interpolation,
                                 config_.grid, level_next_);
    }

    std::vector<double> solve_value(std::size_t m, const RegimeState& prev, const RegimeState& cur, double om,
                                    bool newton) {
        const auto& grid = config_.grid;
        auto& cu = avg_[m][0];
        auto& cw = avg_[m][1];
        if (model_.num_regimes() > 1) {
            detail::average_into(level_n_.u[m], level_next_.u[m], cu);
            detail::average_into(level_n_.w[m], level_next_.w[m], cw);
        } else {
            std::fill(cu.begin(), cu.end(), 0.0);
            std::fill(cw.begin(), cw.end(), 0.0);
        }
        const ValueSystemInputs in{prev.u, prev.w, prev.y, cur.w, cur.y, cu, cw};
        auto sys = assemble_value_system(in, coeffs_[m], om, grid, model_.strike);
        // omega depends on s_f = K - u_0; its sensitivity enters as a rank-one column on u_0.
        const auto shifted = assemble_value_system(in, coeffs_[m], om + 1.0, grid, model_.strike);
        const std::size_t n = cur.u.size();
        std::vector<double> r0(n), r1(n), column(n);
        multiply(sys, cur.u, r0);
        multiply(shifted, cur.u, r1);
        const double domega_du0 = -omega_boundary_derivative(cur.s_f, prev.s_f, grid.k);
        for (std::size_t i = 0; i < n; ++i) {
            r0[i] -= sys.rhs[i];
            r1[i] -= shifted.rhs[i];
            column[i] = domega_du0 * (r1[i] - r0[i]);
        }
        if (model_.num_regimes() > 1) {
            // Foreign samples sit at x + ln(s_f / s_f_l), so the new-level coupling moves with s_f as well.
            auto& du_c = avg_[m][2];
            auto& dw_c = avg_[m][3];
            const double half_inv_s = 0.5 / cur.s_f;
            for (std::size_t i = 0; i < n; ++i) {
                du_c[i] = cu[i] - half_inv_s * level_next_.w[m][i];
                dw_c[i] = cw[i] - half_inv_s * level_next_.y[m][i];
            }
            const ValueSystemInputs moved{prev.u, prev.w, prev.y, cur.w, cur.y, du_c, dw_c};
            const auto perturbed = assemble_value_system(moved, coeffs_[m], om, grid, model_.strike);
            multiply(perturbed, cur.u, r1);
            for (std::size_t i = 0; i < n; ++i) column[i] += (r1[i] - perturbed.rhs[i]) - r0[i];
        }
        if (!newton) {
            // The latest w iterate moves with s_f through its Dirichlet value and omega.
            const std::vector<double> zero(n, 0.0);
            const DerivativeSystemInputs din{zero, prev.u, cur.u, zero};
            const auto dw_ds = thomas_solve(
                assemble_derivative_system(din, coeffs_[m], -domega_du0, grid, 1.0));
            std::vector<double> w_moved(cur.w);
            for (std::size_t i = 0; i < n; ++i) w_moved[i] -= dw_ds[i];
            const ValueSystemInputs moved{prev.u, prev.w, prev.y, w_moved, cur.y, cu, cw};
            const auto perturbed = assemble_value_system(moved, coeffs_[m], om, grid, model_.strike);
            multiply(perturbed, cur.u, r1);
            for (std::size_t i = 0; i < n; ++i) column[i] += (r1[i] - perturbed.rhs[i]) - r0[i];
        }
        std::vector<double> out;
        if (newton) {
            sys.rhs = std::move(r0);
            const auto delta = thomas_solve_bordered(sys, column);
            out.resize(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = cur.u[i] - delta[i];
        } else {
            for (std::size_t i = 0; i < n; ++i) sys.rhs[i] += column[i] * cur.u[0];
            out = thomas_solve_bordered(sys, column);
        }
        keep_boundary_admissible(cur.u, out);
        return out;
    }

    /// Halves the step from u_old until K - u[0] lies in (0, K].
    void keep_boundary_admissible(const std::vector<double>& u_old, std::vector<double>& u) const {
        const double K = model_.strike;
        for (int halvings = 0; halvings < 60; ++halvings) {
            const double s = K - u[0];
            if (s > 0.0 && s <= K) return;
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = u_old[i] + 0.5 * (u[i] - u_old[i]);
        }
    }

    std::vector<double> solve_derivative(std::size_t m, const std::vector<double>& f_n, const std::vector<double>& g_n,
                                         const std::vector<double>& g_guess, const std::vector<double>& c_n,
                                         const std::vector<double>& c_next, const std::vector<double>& f_guess,
                                         double om, double edge, bool newton) {
        auto& cf = avg_[m][2];
        if (model_.num_regimes() > 1)
            detail::average_into(c_n, c_next, cf);
        else
            std::fill(cf.begin(), cf.end(), 0.0);
        const DerivativeSystemInputs in{f_n, g_n, g_guess, cf};
        auto sys = assemble_derivative_system(in, coeffs_[m], om, config_.grid, -edge);
        return newton ? newton_update(sys, f_guess) : thomas_solve(sys);
    }

    /// x - J^{-1}(J x - b) with J the assembled matrix.
    static std::vector<double> newton_update(TridiagonalSystem& sys, const std::vector<double>& x) {
        std::vector<double> residual(x.size());
        multiply(sys, x, residual);
        for (std::size_t i = 0; i < x.size(); ++i) residual[i] -= sys.rhs[i];
        sys.rhs = std::move(residual);
        const auto delta = thomas_solve(sys);
        std::vector<double> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - delta[i];
        return out;
    }

    BoundaryDerivatives boundary_derivatives(std::size_t m, double s_f, double om) const {
        if (config_.closure == BoundaryClosure::Exercise) return {-s_f, -s_f};
        const bool coupled = model_.num_regimes() > 1;
        return continuation_boundary(model_, m, s_f, om, coupled ? level_next_.u[m][0] : 0.0,
                                     coupled ? level_next_.w[m][0] : 0.0);
    }

    double boundary_from(const std::vector<double>& u, std::size_t m) const {
        const double s = model_.strike - u[0];
        if (!(s > 0.0) || !std::isfinite(s))
            throw Error(ErrorCode::NonpositiveBoundary,
                        "exercise boundary left (0, inf) in regime " + std::to_string(m + 1));
        return s;
    }

    [[noreturn]] void no_convergence(double ds, double du) const {
        throw Error(ErrorCode::NoConvergence, "no convergence after " + std::to_string(config_.max_iterations) +
                                                  " iterations (boundary change " + std::to_string(ds) +
                                                  ", value change " + std::to_string(du) + ")");
    }

    template <typename F>
    void for_each_regime(std::size_t I, F&& body) {
        if (!config_.parallel || I == 1) {
            for (std::size_t m = 0; m < I; ++m) body(m);
            return;
        }
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(I);
        for (std::size_t m = 0; m < I; ++m) {
            workers.emplace_back([&, m] {
                try {
                    body(m);
                } catch (...) {
                    errors[m] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    const RegimeModel& model_;
    const SolverConfig& config_;
    std::vector<SchemeCoefficients> coeffs_;
    detail::CouplingSums level_n_, level_next_;
    std::vector<std::vector<double>> z_slopes_, snapshot_slopes_;
    std::vector<std::vector<std::vector<double>>> avg_;  ///< per-regime averaged coupling scratch
};

inline std::size_t gs_time_step(std::vector<RegimeState>& states, const RegimeModel& model, const SolverConfig& config) {
    TimeStepper stepper(model, config);
    return stepper.gs_step(states);
}

inline std::size_t newton_time_step(std::vector<RegimeState>& states, const RegimeModel& model,
                                    const SolverConfig& config) {
    TimeStepper stepper(model, config);
    return stepper.newton_step(states);
}

namespace detail {

/// Groups of regimes linked by nonzero transition rates in either direction.
inline std::vector<std::vector<std::size_t>> regime_components(const GeneratorMatrix& q) {
    const std::size_t I = q.num_regimes();
    std::vector<std::size_t> label(I, I);
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t seed = 0; seed < I; ++seed) {
        if (label[seed] != I) continue;
        std::vector<std::size_t> group{seed}, stack{seed};
        label[seed] = groups.size();
        while (!stack.empty()) {
            const std::size_t m = stack.back();
            stack.pop_back();
            for (std::size_t l = 0; l < I; ++l) {
                if (label[l] != I || (q(m, l) == 0.0 && q(l, m) == 0.0)) continue;
                label[l] = groups.size();
                group.push_back(l);
                stack.push_back(l);
            }
        }
        std::sort(group.begin(), group.end());
        groups.push_back(std::move(group));
    }
    return groups;
}

inline RegimeModel sub_model(const RegimeModel& model, const std::vector<std::size_t>& regimes) {
    RegimeModel s;
    s.strike = model.strike;
    s.expiry = model.expiry;
    std::vector<std::vector<double>> rows;
    for (std::size_t m : regimes) {
        s.rates.push_back(model.rates[m]);
        s.vols.push_back(model.vols[m]);
        auto& row = rows.emplace_back();
        for (std::size_t l : regimes) row.push_back(model.generator(m, l));
    }
    s.generator = validate_generator(rows);
    return s;
}

inline SolveResult solve_coupled(const RegimeModel& model, const SolverConfig& config);

}  // namespace detail

/// Runs config.grid.N steps from the initial state. Groups of regimes that never
/// switch into one another are solved independently.
inline SolveResult solve(const RegimeModel& model, const SolverConfig& config) {
    model.validate();
    config.validate();
    const auto groups = detail::regime_components(model.generator);
    if (groups.size() == 1) return detail::solve_coupled(model, config);

    const auto start = std::chrono::steady_clock::now();
    const std::size_t I = model.num_regimes();
    SolveResult result;
    result.grid = config.grid;
    result.strike = model.strike;
    result.states.resize(I);
    result.greeks.resize(I);
    result.boundary.num_regimes = I;
    result.boundary.values.resize(I);
    result.iterations.assign(config.grid.N, 0);
    for (const auto& group : groups) {
        auto part = detail::solve_coupled(detail::sub_model(model, group), config);
        for (std::size_t j = 0; j < group.size(); ++j) {
            result.states[group[j]] = std::move(part.states[j]);
            result.greeks[group[j]] = std::move(part.greeks[j]);
            result.boundary.values[group[j]] = std::move(part.boundary.values[j]);
        }
        for (std::size_t n = 0; n < part.iterations.size(); ++n)
            result.iterations[n] = std::max(result.iterations[n], part.iterations[n]);
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace detail {

inline SolveResult solve_coupled(const RegimeModel& model, const SolverConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto& grid = config.grid;
    const std::size_t I = model.num_regimes(), n_nodes = grid.M + 1;

    SolveResult result;
    result.grid = grid;
    result.strike = model.strike;
    result.states = initial_state(model, grid);
    result.boundary.num_regimes = I;
    result.boundary.values.assign(I, std::vector<double>{});
    for (std::size_t m = 0; m < I; ++m) {
        result.boundary.values[m].reserve(grid.N + 1);
        result.boundary.values[m].push_back(model.strike);
    }
    result.greeks.assign(I, GreeksField::zeros(n_nodes));
    result.iterations.reserve(grid.N);

    TimeStepper stepper(model, config);
    std::vector<RegimeState> older;
    for (std::size_t n = 0; n < grid.N; ++n) {
        std::vector<RegimeState> previous = result.states;
        std::size_t its = 0;
        try {
            its = config.method == Method::GaussSeidel ? stepper.gs_step(result.states)
                                                       : stepper.newton_step(result.states);
        } catch (const Error& e) {
            throw Error(e.code(), e.message() + " at time step " + std::to_string(n + 1));
        }
        result.iterations.push_back(its);
        for (std::size_t m = 0; m < I; ++m) {
            result.boundary.values[m].push_back(result.states[m].s_f);
            const auto& cur = result.states[m];
            const auto& prv = previous[m];
            const bool first = n == 0;
            const TimeLevels u{first ? std::span<const double>{} : std::span<const double>(older[m].u), prv.u, cur.u};
            const TimeLevels w{first ? std::span<const double>{} : std::span<const double>(older[m].w), prv.w, cur.w};
            const TimeLevels y{first ? std::span<const double>{} : std::span<const double>(older[m].y), prv.y, cur.y};
            result.greeks[m] = update_time_greeks(u, w, y, grid.k, n + 1);
        }
        older = std::move(previous);
    }
    result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace detail

/// Option value at spot S in regime m from a finished solve.
inline double price_at_asset(const SolveResult& result, double S, std::size_t regime) {
    if (regime >= result.states.size())
        throw Error(ErrorCode::RegimeOutOfRange, "regime " + std::to_string(regime + 1) + " out of range");
    if (!(S > 0.0)) throw Error(ErrorCode::NonpositiveAsset, "asset price must be positive");
    const auto& st = result.states[regime];
    if (S <= st.s_f) return result.strike - S;
    const double x = std::log(S / st.s_f);
    if (x > result.grid.x_max) return 0.0;
    return hermite_at(st.u, st.w, x, result.grid);
}

inline PhysicalGreeks greeks_at_asset(const SolveResult& result, double S, std::size_t regime) {
    if (regime >= result.states.size())
        throw Error(ErrorCode::RegimeOutOfRange, "regime " + std::to_string(regime + 1) + " out of range");
    return to_physical(result.states[regime], result.greeks[regime], result.boundary_log_slope(regime), S,
                       result.strike, result.grid);
}

}  // namespace ffcs
