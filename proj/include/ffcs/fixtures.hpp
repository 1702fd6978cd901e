#pragma once

#include "ffcs/error.hpp"
#include "ffcs/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ffcs {

/// A named market model with the grid settings used for it in the published experiments.
struct Fixture {
    std::string name;
    std::string description;
    RegimeModel model;
    double x_max = 3.0;
    double h = 0.01;
    double epsilon = 1e-8;
    std::vector<double> assets;
};

namespace detail {

inline std::vector<std::vector<double>> uniform_generator(std::size_t n, double off) {
    std::vector<std::vector<double>> q(n, std::vector<double>(n, off));
    for (std::size_t m = 0; m < n; ++m) q[m][m] = -off * static_cast<double>(n - 1);
    return q;
}

inline RegimeModel make_model(std::vector<double> rates, std::vector<double> vols,
                              const std::vector<std::vector<double>>& q, double strike) {
    RegimeModel m;
    m.rates = std::move(rates);
    m.vols = std::move(vols);
    m.generator = validate_generator(q);
    m.strike = strike;
    m.expiry = 1.0;
    m.validate();
    return m;
}

inline const std::vector<double>& table_assets() {
    static const std::vector<double> s{3.5, 4.0, 4.5, 6.0, 7.5, 8.5, 9.0, 9.5, 10.5, 12.0};
    return s;
}

}  // namespace detail

inline Fixture two_regime_fixture() {
    return {"two-regime-ex1", "two regimes, K = 9, T = 1",
            detail::make_model({0.10, 0.05}, {0.80, 0.30}, {{-6.0, 6.0}, {9.0, -9.0}}, 9.0),
            3.0, 0.01, 1e-8, detail::table_assets()};
}

inline Fixture no_jump_fixture() {
    return {"no-jump-ex2", "two regimes without switching, K = 9, T = 1",
            detail::make_model({0.10, 0.05}, {0.80, 0.30}, {{0.0, 0.0}, {0.0, 0.0}}, 9.0),
            3.0, 0.01, 1e-8, {6.0, 9.0, 12.0}};
}

inline Fixture example3_fixture() {
    return {"two-regime-ex3", "two regimes, K = 10, T = 1",
            detail::make_model({0.05, 0.05}, {0.30, 0.40}, {{-3.0, 3.0}, {2.0, -2.0}}, 10.0),
            3.0, 0.01, 1e-8, {8.0, 9.0, 10.0, 11.0, 12.0}};
}

inline Fixture four_regime_fixture() {
    const double t = 1.0 / 3.0;
    return {"four-regime", "four regimes, K = 9, T = 1",
            detail::make_model({0.02, 0.10, 0.06, 0.15}, {0.90, 0.50, 0.70, 0.20},
                               {{-1.0, t, t, t}, {t, -1.0, t, t}, {t, t, -1.0, t}, {t, t, t, -1.0}}, 9.0),
            3.0, 0.01, 1e-8, detail::table_assets()};
}

inline Fixture eight_regime_fixture() {
    return {"eight-regime", "eight regimes, K = 9, T = 1",
            detail::make_model({0.03, 0.15, 0.20, 0.09, 0.05, 0.12, 0.15, 0.18},
                               {0.80, 0.40, 0.50, 0.70, 0.45, 0.38, 0.30, 0.25},
                               {{-1.0, 0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.1},
                                {0.2, -1.0, 0.1, 0.1, 0.1, 0.2, 0.2, 0.1},
                                {0.2, 0.1, -1.0, 0.1, 0.2, 0.1, 0.1, 0.2},
                                {0.2, 0.1, 0.2, -1.0, 0.2, 0.1, 0.1, 0.1},
                                {0.1, 0.2, 0.1, 0.1, -1.0, 0.2, 0.1, 0.2},
                                {0.2, 0.2, 0.2, 0.1, 0.1, -1.0, 0.1, 0.1},
                                {0.1, 0.1, 0.2, 0.2, 0.2, 0.1, -1.0, 0.1},
                                {0.1, 0.1, 0.1, 0.2, 0.1, 0.2, 0.2, -1.0}},
                               9.0),
            3.0, 0.01, 1e-7, detail::table_assets()};
}

inline Fixture sixteen_regime_fixture() {
    return {"sixteen-regime", "sixteen regimes, K = 9, T = 1",
            detail::make_model({0.04, 0.15, 0.03, 0.30, 0.13, 0.12, 0.10, 0.18, 0.08, 0.25, 0.06, 0.20, 0.21, 0.07,
                                0.12, 0.19},
                               {0.07, 0.30, 0.90, 0.80, 0.25, 0.15, 0.12, 0.28, 0.85, 0.35, 0.39, 0.72, 0.45, 0.18,
                                0.20, 0.25},
                               detail::uniform_generator(16, 0.2), 9.0),
            3.0, 0.01, 1e-7, detail::table_assets()};
}

inline std::vector<Fixture> all_fixtures() {
    return {two_regime_fixture(),   no_jump_fixture(),      example3_fixture(),
            four_regime_fixture(), eight_regime_fixture(), sixteen_regime_fixture()};
}

inline Fixture find_fixture(std::string_view name) {
    for (auto& f : all_fixtures())
        if (f.name == name) return f;
    throw Error(ErrorCode::ConfigParse, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace ffcs
