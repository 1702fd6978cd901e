// Prices an American put in a two-state market and prints values, Greeks and
// the exercise boundary.

#include "ffcs/ffcs.hpp"

#include <cstdio>

int main() {
    ffcs::RegimeModel model;
    model.strike = 9.0;
    model.expiry = 1.0;
    model.rates = {0.10, 0.05};
    model.vols = {0.80, 0.30};
    model.generator = ffcs::validate_generator({{-6.0, 6.0}, {9.0, -9.0}});

    ffcs::SolverConfig config;
    config.method = ffcs::Method::GaussSeidel;
    config.interpolation = ffcs::Interpolation::Quintic;
    config.grid = ffcs::GridSpec::with_square_time_step(3.0, 0.02, model.expiry);

    try {
        const auto result = ffcs::solve(model, config);
        std::printf("%6s %7s %10s %10s %10s %10s\n", "S", "regime", "price", "delta", "gamma", "theta");
        for (double S : {6.0, 8.0, 9.0, 10.0, 12.0}) {
            for (std::size_t m = 0; m < model.num_regimes(); ++m) {
                const auto g = ffcs::greeks_at_asset(result, S, m);
                std::printf("%6.2f %7zu %10.6f %10.6f %10.6f %10.6f\n", S, m + 1, ffcs::price_at_asset(result, S, m),
                            g.delta, g.gamma, -g.theta);
            }
        }
        for (std::size_t m = 0; m < model.num_regimes(); ++m)
            std::printf("exercise boundary at t = 0, regime %zu: %.6f\n", m + 1, result.states[m].s_f);
    } catch (const ffcs::Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    return 0;
}
