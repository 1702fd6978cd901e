#pragma once

#include "ffcs/error.hpp"
#include "ffcs/model.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ffcs {

/// Row i reads sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]; sub[0] and sup[n-1] are unused.
struct TridiagonalSystem {
    std::vector<double> sub, diag, sup, rhs;

    TridiagonalSystem() = default;
    explicit TridiagonalSystem(std::size_t n) : sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0) {}

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

    bool operator==(const TridiagonalSystem&) const = default;
};

/// y = A x
inline void multiply(const TridiagonalSystem& a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = a.size();
    if (x.size() != n || y.size() != n) throw Error(ErrorCode::DimensionMismatch, "multiply: size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        double v = a.diag[i] * x[i];
        if (i > 0) v += a.sub[i] * x[i - 1];
        if (i + 1 < n) v += a.sup[i] * x[i + 1];
        y[i] = v;
    }
}

/// Thomas elimination. Solves A x = rhs.
inline std::vector<double> thomas_solve(const TridiagonalSystem& a) {
    const std::size_t n = a.size();
    if (n == 0 || a.sub.size() != n || a.sup.size() != n || a.rhs.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "thomas_solve: inconsistent system arrays");
    std::vector<double> c(n), x(n);
    double pivot = a.diag[0];
    if (pivot == 0.0) throw Error(ErrorCode::SingularPivot, "zero pivot at row 0");
    c[0] = a.sup[0] / pivot;
    x[0] = a.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = a.diag[i] - a.sub[i] * c[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot))
            throw Error(ErrorCode::SingularPivot, "zero pivot at row " + std::to_string(i));
        c[i] = a.sup[i] / pivot;
        x[i] = (a.rhs[i] - a.sub[i] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

/// Solves (A + column e_0^T) x = rhs with two Thomas passes (Sherman-Morrison).
inline std::vector<double> thomas_solve_bordered(const TridiagonalSystem& a, std::span<const double> column) {
    if (column.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "bordered column length");
    auto x = thomas_solve(a);
    TridiagonalSystem b = a;
    b.rhs.assign(column.begin(), column.end());
    const auto v = thomas_solve(b);
    const double denom = 1.0 + v[0];
    if (denom == 0.0 || !std::isfinite(denom)) throw Error(ErrorCode::SingularPivot, "singular bordered system");
    const double scale = x[0] / denom;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= scale * v[i];
    return x;
}

/// Per-regime constants of the Crank-Nicolson compact scheme.
struct SchemeCoefficients {
    double sigma2 = 0.0;    ///< sigma_m^2
    double reaction = 0.0;  ///< r_m - q_mm
    double h = 0.0;
    double k = 0.0;

    static SchemeCoefficients make(const RegimeModel& model, std::size_t m, const GridSpec& grid) {
        return {model.vols[m] * model.vols[m], model.rates[m] - model.generator(m, m), grid.h, grid.k};
    }

    [[nodiscard]] double mu() const noexcept { return sigma2 * k / (4.0 * h * h); }
    [[nodiscard]] double kappa() const noexcept { return reaction * k; }
    [[nodiscard]] double omega_k(double omega) const noexcept { return omega * k; }
};

/// Level-n fields, current n+1 iterates of delta/gamma, and time-averaged coupling
/// sums (sum_{l != m} q_ml f_l at n and n+1, halved) on the home grid.
struct ValueSystemInputs {
    std::span<const double> u_n, w_n, y_n;
    std::span<const double> w_guess, y_guess;
    std::span<const double> coupling_u, coupling_w;
};

namespace detail {

inline void check_lengths(std::size_t n, std::initializer_list<std::span<const double>> arrays) {
    for (const auto& a : arrays)
        if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "scheme input length differs from M+1");
}

/// Shared interior matrix: (1,10,1)/12k mass, sigma^2/4h^2 (1,-2,1) stiffness, (r - q_mm)/24 reaction.
inline void fill_interior_matrix(TridiagonalSystem& sys, const SchemeCoefficients& c, std::size_t M) {
    const double h2 = c.h * c.h;
    const double off = 1.0 / (12.0 * c.k) - c.sigma2 / (4.0 * h2) + c.reaction / 24.0;
    const double mid = 10.0 / (12.0 * c.k) + c.sigma2 / (2.0 * h2) + 10.0 * c.reaction / 24.0;
    for (std::size_t i = 1; i < M; ++i) {
        sys.sub[i] = off;
        sys.diag[i] = mid;
        sys.sup[i] = off;
    }
    sys.diag[M] = 1.0;
    sys.rhs[M] = 0.0;
}

/// Known level-n part of an interior row for field f.
inline double interior_known(std::span<const double> f, std::size_t i, const SchemeCoefficients& c) {
    const double mass = f[i - 1] + 10.0 * f[i] + f[i + 1];
    const double lap = f[i - 1] - 2.0 * f[i] + f[i + 1];
    return mass / (12.0 * c.k) + c.sigma2 / (4.0 * c.h * c.h) * lap - c.reaction / 24.0 * mass;
}

inline double mass(std::span<const double> f, std::size_t i) { return f[i - 1] + 10.0 * f[i] + f[i + 1]; }
inline double lap(std::span<const double> f, std::size_t i) { return f[i - 1] - 2.0 * f[i] + f[i + 1]; }

}  // namespace detail

/// System for u^{n+1}. Row 0 is the one-sided compact closure at the free boundary,
/// rows 1..M-1 the compact interior scheme, row M the far-field condition u = 0.
inline TridiagonalSystem assemble_value_system(const ValueSystemInputs& in, const SchemeCoefficients& c,
                                               double omega, const GridSpec& grid, double strike) {
    const std::size_t M = grid.M;
    detail::check_lengths(M + 1, {in.u_n, in.w_n, in.y_n, in.w_guess, in.y_guess, in.coupling_u, in.coupling_w});
    TridiagonalSystem sys(M + 1);
    detail::fill_interior_matrix(sys, c, M);

    const double h = c.h, k = c.k, s2 = c.sigma2, kap = c.reaction, K = strike;
    const auto& un = in.u_n;
    const auto& wn = in.w_n;
    const auto& yn = in.y_n;
    const auto& wg = in.w_guess;
    const auto& yg = in.y_guess;

    for (std::size_t i = 1; i < M; ++i) {
        sys.rhs[i] = detail::interior_known(un, i, c) + omega / 24.0 * (detail::mass(wg, i) + detail::mass(wn, i)) +
                     detail::mass(in.coupling_u, i) / 12.0;
    }

    // Boundary row: the x0 compact relation for U_xx (scaled by sigma^2/2), with
    // U_x(0) = U(0) - K, U_xxx from the delta equation at x0 and x1, and gamma at
    // x0 closed by Y0 + 4Y1 + Y2 = 3(W2 - W0)/h. w0 at n+1 is u0 - K.
    const double avg_w1 = 0.5 * (wg[1] + wn[1]);
    const double avg_w2 = 0.5 * (wg[2] + wn[2]);
    const double avg_y1 = 0.5 * (yg[1] + yn[1]);
    const double avg_y2 = 0.5 * (yg[2] + yn[2]);

    sys.diag[0] = (7.0 + h) / (4.0 * k) + (7.0 + h) * kap / 8.0 - 0.5 * omega + 5.0 * s2 / (4.0 * h * h) +
                  5.0 * s2 / (4.0 * h);
    sys.sup[0] = 3.0 / (4.0 * k) + 3.0 * kap / 8.0 - 5.0 * s2 / (4.0 * h * h);

    double rhs = (7.0 + h) / (4.0 * k) * un[0] - (7.0 + h) * kap / 8.0 * un[0] + 0.5 * omega * (wn[0] - K);
    rhs += 3.0 / (4.0 * k) * un[1] - 3.0 * kap / 8.0 * un[1];
    rhs += 5.0 * s2 / (4.0 * h * h) * (un[1] - un[0]) - 5.0 * s2 / (4.0 * h) * un[0] + 5.0 * s2 * K / (2.0 * h);
    rhs += 0.25 * h * kap * K;
    rhs += 0.75 * omega * (avg_w1 + avg_w2) - h * omega * avg_y1 - 0.25 * h * omega * avg_y2;
    rhs += h / 6.0 * ((wg[1] - wn[1]) / k - omega * avg_y1 + kap * avg_w1 - in.coupling_w[1]);
    rhs += 1.75 * in.coupling_u[0] + 0.75 * in.coupling_u[1] + 0.25 * h * in.coupling_w[0];
    sys.rhs[0] = rhs;
    return sys;
}

/// Level-n field f and predecessor g, the n+1 iterate of g, and the time-averaged
/// coupling sum for f.
struct DerivativeSystemInputs {
    std::span<const double> f_n, g_n, g_guess;
    std::span<const double> coupling_f;
};

/// System for one of w, y, z at n+1 with Dirichlet value -s_f at x = 0 and 0 at x_max.
inline TridiagonalSystem assemble_derivative_system(const DerivativeSystemInputs& in, const SchemeCoefficients& c,
                                                    double omega, const GridSpec& grid, double s_f_next) {
    const std::size_t M = grid.M;
    detail::check_lengths(M + 1, {in.f_n, in.g_n, in.g_guess, in.coupling_f});
    TridiagonalSystem sys(M + 1);
    detail::fill_interior_matrix(sys, c, M);
    const double src = omega / (2.0 * c.h * c.h);
    for (std::size_t i = 1; i < M; ++i) {
        sys.rhs[i] = detail::interior_known(in.f_n, i, c) +
                     src * (detail::lap(in.g_guess, i) + detail::lap(in.g_n, i)) +
                     detail::mass(in.coupling_f, i) / 12.0;
    }
    sys.diag[0] = 1.0;
    sys.rhs[0] = -s_f_next;
    return sys;
}

/// LHS - RHS of the one-sided compact relation for f'' on [x0, x0 + h].
/// f(x, order) returns the order-th derivative of f at x, order in 0..3.
template <typename F>
double lemma34_residual(const F& f, double x0, double h) {
    const double x1 = x0 + h;
    const double lhs = 1.75 * f(x0, 2) + 0.75 * f(x1, 2);
    const double rhs = 5.0 / (h * h) * (f(x1, 0) - f(x0, 0)) - 5.0 / h * f(x0, 1) - h / 4.0 * f(x0, 3) +
                       h / 6.0 * f(x1, 3);
    return lhs - rhs;
}

}  // namespace ffcs
