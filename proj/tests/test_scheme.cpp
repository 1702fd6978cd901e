#include "ffcs/scheme.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace ffcs;
using Catch::Approx;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense to_dense(const TridiagonalSystem& a) {
    const std::size_t n = a.size();
    Dense d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = a.diag[i];
        if (i > 0) d[i][i - 1] = a.sub[i];
        if (i + 1 < n) d[i][i + 1] = a.sup[i];
    }
    return d;
}

/// Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(Dense a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        std::swap(a[c], a[p]);
        std::swap(b[c], b[p]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

TridiagonalSystem random_dominant(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    TridiagonalSystem a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.sub[i] = i > 0 ? d(rng) : 0.0;
        a.sup[i] = i + 1 < n ? d(rng) : 0.0;
        const double sign = d(rng) < 0 ? -1.0 : 1.0;
        a.diag[i] = sign * (std::abs(a.sub[i]) + std::abs(a.sup[i]) + 0.1 + std::abs(d(rng)));
        a.rhs[i] = 10.0 * d(rng);
    }
    return a;
}

double rel_error(const std::vector<double>& x, const std::vector<double>& ref) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num = std::max(num, std::abs(x[i] - ref[i]));
        den = std::max(den, std::abs(ref[i]));
    }
    return num / std::max(den, 1e-300);
}

SchemeCoefficients coeffs(double sigma, double reaction, double h, double k) {
    return {sigma * sigma, reaction, h, k};
}

}  // namespace

TEST_CASE("thomas: identity and 3x3", "[scheme]") {
    TridiagonalSystem id(5);
    for (std::size_t i = 0; i < 5; ++i) {
        id.diag[i] = 1.0;
        id.rhs[i] = static_cast<double>(i) - 1.5;
    }
    CHECK(thomas_solve(id) == id.rhs);

    TridiagonalSystem a(3);
    a.diag = {2, 2, 2};
    a.sub = {0, 1, 1};
    a.sup = {1, 1, 0};
    a.rhs = {1, 0, 1};
    const auto x = thomas_solve(a);
    const auto ref = dense_solve(to_dense(a), a.rhs);
    CHECK(x[0] == Approx(1.0));
    CHECK(x[1] == Approx(-1.0));
    CHECK(x[2] == Approx(1.0));
    CHECK(rel_error(x, ref) < 1e-14);
}

TEST_CASE("thomas matches a dense solver on random dominant systems", "[scheme]") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> size(2, 200);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(trial == 0 ? 200 : size(rng));
        const auto a = random_dominant(rng, n);
        worst = std::max(worst, rel_error(thomas_solve(a), dense_solve(to_dense(a), a.rhs)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("thomas recovers a planted solution", "[scheme]") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    auto a = random_dominant(rng, 150);
    std::vector<double> x(150);
    for (auto& v : x) v = d(rng);
    multiply(a, x, a.rhs);
    CHECK(rel_error(thomas_solve(a), x) < 1e-10);
}

TEST_CASE("thomas errors", "[scheme]") {
    TridiagonalSystem z(3);
    z.diag = {0, 1, 1};
    CHECK_THROWS_AS(thomas_solve(z), Error);
    TridiagonalSystem bad(3);
    bad.rhs.pop_back();
    CHECK_THROWS_AS(thomas_solve(bad), Error);
}

TEST_CASE("bordered solve matches dense", "[scheme]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-0.2, 0.2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_dominant(rng, 40);
        std::vector<double> col(40);
        for (auto& c : col) c = d(rng);
        auto dense = to_dense(a);
        for (std::size_t i = 0; i < 40; ++i) dense[i][0] += col[i];
        CHECK(rel_error(thomas_solve_bordered(a, col), dense_solve(dense, a.rhs)) < 1e-10);
    }
}

TEST_CASE("interior rows match an independent dense assembly", "[scheme]") {
    const double sigma = 0.3, h = 0.1, k = 0.01, reaction = 0.05 + 9.0, om = -0.37, K = 9.0;
    const auto c = coeffs(sigma, reaction, h, k);
    const auto grid = GridSpec::uniform(3.0, 30, 1.0, 100);
    const std::size_t n = grid.M + 1;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> un(n), wn(n), yn(n), wg(n), yg(n), cu(n), cw(n);
    for (auto* v : {&un, &wn, &yn, &wg, &yg, &cu, &cw})
        for (auto& x : *v) x = d(rng);
    const auto sys = assemble_value_system({un, wn, yn, wg, yg, cu, cw}, c, om, grid, K);

    // Mass B = tridiag(1,10,1)/12 and second difference L = tridiag(1,-2,1)/h^2, built densely.
    Dense B(n, std::vector<double>(n, 0.0)), L = B;
    for (std::size_t i = 1; i < n - 1; ++i) {
        B[i][i - 1] = B[i][i + 1] = 1.0 / 12.0;
        B[i][i] = 10.0 / 12.0;
        L[i][i - 1] = L[i][i + 1] = 1.0 / (h * h);
        L[i][i] = -2.0 / (h * h);
    }
    const double s2 = sigma * sigma;
    for (std::size_t i = 1; i < n - 1; ++i) {
        for (std::size_t j : {i - 1, i, i + 1}) {
            const double lhs = B[i][j] / k + 0.5 * reaction * B[i][j] - 0.25 * s2 * L[i][j];
            const double got = j == i ? sys.diag[i] : (j < i ? sys.sub[i] : sys.sup[i]);
            CHECK(got == Approx(lhs).epsilon(1e-12));
        }
        double rhs = 0.0;
        for (std::size_t j : {i - 1, i, i + 1}) {
            rhs += (B[i][j] / k - 0.5 * reaction * B[i][j] + 0.25 * s2 * L[i][j]) * un[j];
            rhs += 0.5 * om * B[i][j] * (wg[j] + wn[j]);
            rhs += B[i][j] * cu[j];
        }
        CHECK(sys.rhs[i] == Approx(rhs).epsilon(1e-12));
    }
    CHECK(sys.diag[grid.M] == 1.0);
    CHECK(sys.rhs[grid.M] == 0.0);
    CHECK(sys.sub[grid.M] == 0.0);
}

TEST_CASE("value system from zero data carries only the strike sources", "[scheme]") {
    const double sigma = 0.8, h = 0.05, k = 0.0025, reaction = 0.1 + 6.0, om = -0.22, K = 9.0;
    const auto c = coeffs(sigma, reaction, h, k);
    const auto grid = GridSpec::uniform(3.0, 60, 1.0, 400);
    const std::vector<double> z(grid.M + 1, 0.0);
    const auto sys = assemble_value_system({z, z, z, z, z, z, z}, c, om, grid, K);
    const double s2 = sigma * sigma;
    const double expected = -0.5 * om * K + 5.0 * s2 * K / (2.0 * h) + 0.25 * h * reaction * K;
    CHECK(sys.rhs[0] == Approx(expected).epsilon(1e-13));
    for (std::size_t i = 1; i <= grid.M; ++i) CHECK(sys.rhs[i] == 0.0);
}

TEST_CASE("assembly is deterministic", "[scheme]") {
    const auto c = coeffs(0.3, 9.05, 0.05, 0.0025);
    const auto grid = GridSpec::uniform(3.0, 60, 1.0, 400);
    std::vector<double> f(grid.M + 1);
    for (std::size_t i = 0; i <= grid.M; ++i) f[i] = std::exp(-grid.node(i));
    const auto a = assemble_value_system({f, f, f, f, f, f, f}, c, 0.1, grid, 9.0);
    const auto b = assemble_value_system({f, f, f, f, f, f, f}, c, 0.1, grid, 9.0);
    CHECK(a == b);
    const auto d1 = assemble_derivative_system({f, f, f, f}, c, 0.1, grid, 8.0);
    const auto d2 = assemble_derivative_system({f, f, f, f}, c, 0.1, grid, 8.0);
    CHECK(d1 == d2);
    CHECK_THROWS_AS(assemble_derivative_system({f, f, std::span<const double>(f).first(10), f}, c, 0.1, grid, 8.0),
                    Error);
}

TEST_CASE("derivative system without sources", "[scheme]") {
    const auto c = coeffs(0.8, 6.1, 0.05, 0.0025);
    const auto grid = GridSpec::uniform(3.0, 60, 1.0, 400);
    const std::vector<double> z(grid.M + 1, 0.0);
    const double s = 8.8;
    const auto f = thomas_solve(assemble_derivative_system({z, z, z, z}, c, -0.3, grid, s));
    CHECK(f[0] == -s);
    CHECK(f[grid.M] == 0.0);
    for (std::size_t i = 1; i <= grid.M; ++i) {
        CHECK(f[i] <= 0.0);
        CHECK(std::abs(f[i]) <= std::abs(f[i - 1]) + 1e-14);
    }
}

TEST_CASE("compact interior relation on smooth functions", "[scheme]") {
    // (f''_{i-1} + 10 f''_i + f''_{i+1})/12 - (f_{i-1} - 2 f_i + f_{i+1})/h^2
    auto residual = [](auto f, auto f2, double x, double h) {
        const std::vector<double> v{f(x - h), f(x), f(x + h)}, d{f2(x - h), f2(x), f2(x + h)};
        return detail::mass(d, 1) / 12.0 - detail::lap(v, 1) / (h * h);
    };
    auto quartic = [](double x) { return 3 * std::pow(x, 4) - x * x + 2; };
    auto quartic2 = [](double x) { return 36 * x * x - 2; };
    CHECK(std::abs(residual(quartic, quartic2, 0.7, 0.1)) < 1e-9);
    auto e = [](double x) { return std::exp(x); };
    const double r1 = std::abs(residual(e, e, 0.4, 0.2)), r2 = std::abs(residual(e, e, 0.4, 0.1));
    CHECK(r1 / r2 >= 14.0);
}

TEST_CASE("boundary compact relation", "[scheme]") {
    auto cubic = [](double x, int o) {
        switch (o) {
            case 0: return 2 * x * x * x - x * x + 3 * x - 1;
            case 1: return 6 * x * x - 2 * x + 3;
            case 2: return 12 * x - 2;
            default: return 12.0;
        }
    };
    CHECK(std::abs(lemma34_residual(cubic, 0.37, 0.1)) < 1e-11);

    auto ex = [](double x, int) { return std::exp(x); };
    auto sn = [](double x, int o) {
        switch (o) {
            case 0: return std::sin(x);
            case 1: return std::cos(x);
            case 2: return -std::sin(x);
            default: return -std::cos(x);
        }
    };
    for (auto* name : {"exp", "sin"}) {
        const bool is_exp = std::string(name) == "exp";
        auto r = [&](double h) {
            return std::abs(is_exp ? lemma34_residual(ex, 0.2, h) : lemma34_residual(sn, 0.3, h));
        };
        for (double h : {0.2, 0.1, 0.05}) {
            const double order = std::log2(r(h) / r(h / 2));
            INFO(name << " h=" << h << " order=" << order);
            CHECK(order >= 3.8);
        }
    }
    CHECK(std::abs(lemma34_residual(sn, 0.3, 0.05)) < 1e-6);
}

TEST_CASE("coefficient helpers", "[scheme]") {
    const auto c = coeffs(0.8, 6.1, 0.01, 1e-4);
    CHECK(c.mu() == Approx(0.64 * 1e-4 / (4e-4)));
    CHECK(c.kappa() == Approx(6.1e-4));
    CHECK(c.omega_k(-0.22) == Approx(-0.22e-4));
}
