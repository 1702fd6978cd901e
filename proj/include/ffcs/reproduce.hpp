#pragma once

#include "ffcs/analysis.hpp"
#include "ffcs/error.hpp"
#include "ffcs/fixtures.hpp"
#include "ffcs/reference_tables.hpp"
#include "ffcs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace ffcs {

/// Memoizes full-horizon solves by fixture and solver settings.
class SolveCache {
public:
    const SolveResult& get(const Fixture& fixture, const SolverConfig& config) {
        const std::string key = key_of(fixture, config);
        auto it = results_.find(key);
        if (it != results_.end()) return *it->second;
        auto r = std::make_unique<SolveResult>(solve(fixture.model, config));
        return *results_.emplace(key, std::move(r)).first->second;
    }

private:
    static std::string key_of(const Fixture& f, const SolverConfig& c) {
        std::ostringstream os;
        os.precision(17);
        os << f.name << '|' << static_cast<int>(c.method) << '|' << static_cast<int>(c.interpolation) << '|'
           << static_cast<int>(c.closure) << '|' << c.epsilon << '|' << c.max_iterations << '|' << c.mixing_depth
           << '|' << c.grid.x_max << '|' << c.grid.M << '|' << c.grid.N;
        return os.str();
    }

    std::map<std::string, std::unique_ptr<SolveResult>> results_;
};

struct CellOutcome {
    ReferenceCell cell;
    double value = std::numeric_limits<double>::quiet_NaN();
    bool pass = false;
};

struct ReproductionReport {
    std::string table_id;
    std::string column;
    std::vector<CellOutcome> cells;
    std::vector<std::string> notes;
    std::vector<std::string> errors;  ///< solve failures, one per fixture

    [[nodiscard]] bool all_pass() const noexcept {
        if (!errors.empty()) return false;
        for (const auto& c : cells)
            if (!c.pass) return false;
        return true;
    }
    [[nodiscard]] std::size_t failures() const noexcept {
        std::size_t n = 0;
        for (const auto& c : cells) n += c.pass ? 0 : 1;
        return n;
    }
};

/// Solver settings for a fixture at step h with k = h^2.
inline SolverConfig fixture_config(const Fixture& f, SolverConfig base, Method m, Interpolation i, double h) {
    base.method = m;
    base.interpolation = i;
    base.epsilon = f.epsilon;
    base.grid = GridSpec::with_square_time_step(f.x_max, h, f.model.expiry);
    return base;
}

/// Value of a tabulated quantity from a finished solve. Time Greeks are returned in calendar time.
inline double quantity_at(const SolveResult& r, Quantity q, double S, std::size_t regime) {
    if (q == Quantity::Price) return price_at_asset(r, S, regime);
    const auto g = greeks_at_asset(r, S, regime);
    switch (q) {
        case Quantity::Delta: return g.delta;
        case Quantity::Gamma: return g.gamma;
        case Quantity::Speed: return g.speed;
        case Quantity::Theta: return -g.theta;
        case Quantity::DeltaDecay: return -g.delta_decay;
        case Quantity::Color: return -g.color;
        default: break;
    }
    throw Error(ErrorCode::UnknownTable, "quantity is not a pointwise value");
}

/// Solves every fixture the column needs and compares each cell.
inline ReproductionReport reproduce(const ReferenceTable& table, const ReferenceColumn& column,
                                    const SolverConfig& base = {}, SolveCache* cache = nullptr) {
    SolveCache local;
    SolveCache& solves = cache ? *cache : local;
    ReproductionReport report{table.id, column.label, {}, table.notes, {}};

    std::vector<std::string> fixtures;
    for (const auto& c : column.cells)
        if (std::find(fixtures.begin(), fixtures.end(), c.fixture) == fixtures.end()) fixtures.push_back(c.fixture);

    for (const auto& name : fixtures) {
        const Fixture fx = find_fixture(name);
        const SolveResult* result = nullptr;
        RefinementStudy study;
        bool refinement = false;
        for (const auto& c : column.cells)
            if (c.fixture == name && (c.quantity == Quantity::MaxError || c.quantity == Quantity::Rate)) refinement = true;
        try {
            if (refinement) {
                const double hs[] = {column.h, column.h / 2, column.h / 4, column.h / 8};
                study = refinement_study(fx.model, fixture_config(fx, base, column.method, column.interpolation, column.h),
                                         hs);
            } else {
                result = &solves.get(fx, fixture_config(fx, base, column.method, column.interpolation, column.h));
            }
        } catch (const Error& e) {
            report.errors.push_back(name + ": " + e.what());
        }

        for (const auto& c : column.cells) {
            if (c.fixture != name) continue;
            CellOutcome out{c};
            if (refinement && report.errors.empty()) {
                for (std::size_t l = 0; l < study.levels.size(); ++l) {
                    if (std::abs(study.levels[l].h - c.key) > 1e-9) continue;
                    if (c.quantity == Quantity::MaxError) out.value = study.levels[l].max_error;
                    else if (l >= 1 && l - 1 < study.rates.size()) out.value = study.rates[l - 1];
                }
            } else if (result) {
                out.value = quantity_at(*result, c.quantity, c.key, c.regime);
            }
            out.pass = std::isfinite(out.value) && c.accepts(out.value);
            report.cells.push_back(out);
        }
    }
    return report;
}

}  // namespace ffcs
