#pragma once

#include "ffcs/error.hpp"
#include "ffcs/fixtures.hpp"
#include "ffcs/model.hpp"
#include "ffcs/solver.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ffcs {

/// A complete run: market model, mesh, solver settings and output requests.
///
/// YAML layout (all sections optional when `fixture` is given):
///
///     fixture: two-regime-ex1
///     model:
///       strike: 9
///       expiry: 1
///       rates: [0.10, 0.05]
///       vols: [0.80, 0.30]
///       generator: [-6, 6, 9, -9]      # row-major, or a list of rows
///     grid:
///       x_max: 3
///       h: 0.01
///       k: h^2                         # or a number
///     solver:
///       method: gauss-seidel           # or newton
///       interpolation: quintic         # or cubic
///       epsilon: 1e-8
///       max_iterations: 100
///       closure: continuation          # or exercise
///       parallel: false
///     output:
///       assets: [6, 9, 12]
///       directory: out
///       formats: [csv, json]
struct RunConfig {
    std::string fixture;
    RegimeModel model;
    double x_max = 3.0;
    double h = 0.01;
    std::optional<double> k;  ///< empty means k = h^2
    SolverConfig solver;
    std::vector<double> assets;
    std::string directory = "out";
    std::vector<std::string> formats{"csv", "json"};

    [[nodiscard]] GridSpec grid() const {
        return k ? GridSpec::with_steps(x_max, h, *k, model.expiry)
                 : GridSpec::with_square_time_step(x_max, h, model.expiry);
    }

    /// Solver settings with the grid filled in.
    [[nodiscard]] SolverConfig solver_config() const {
        SolverConfig c = solver;
        c.grid = grid();
        return c;
    }

    friend bool operator==(const RunConfig& a, const RunConfig& b) {
        const auto& ga = a.model.generator;
        const auto& gb = b.model.generator;
        bool same_q = ga.num_regimes() == gb.num_regimes();
        for (std::size_t i = 0; same_q && i < ga.num_regimes(); ++i)
            for (std::size_t j = 0; same_q && j < ga.num_regimes(); ++j) same_q = ga(i, j) == gb(i, j);
        return a.fixture == b.fixture && a.model.rates == b.model.rates && a.model.vols == b.model.vols && same_q &&
               a.model.strike == b.model.strike && a.model.expiry == b.model.expiry && a.x_max == b.x_max &&
               a.h == b.h && a.k == b.k && a.solver.method == b.solver.method &&
               a.solver.interpolation == b.solver.interpolation && a.solver.epsilon == b.solver.epsilon &&
               a.solver.max_iterations == b.solver.max_iterations && a.solver.closure == b.solver.closure &&
               a.solver.parallel == b.solver.parallel && a.assets == b.assets && a.directory == b.directory &&
               a.formats == b.formats;
    }
};

namespace detail {

[[noreturn]] inline void config_error(const YAML::Node& node, const std::string& field, const std::string& what) {
    std::string where;
    if (node.IsDefined() && node.Mark().line >= 0)
        where = "line " + std::to_string(node.Mark().line + 1) + ", column " + std::to_string(node.Mark().column + 1) + ": ";
    throw Error(ErrorCode::ConfigParse, where + field + ": " + what);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) config_error(node, field, "expected a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        config_error(node, field, "cannot read '" + node.Scalar() + "'");
    }
}

inline std::vector<double> number_list(const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence()) config_error(node, field, "expected a list of numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < node.size(); ++i)
        v.push_back(scalar<double>(node[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::vector<std::vector<double>> generator_rows(const YAML::Node& node, std::size_t regimes) {
    if (!node.IsSequence() || node.size() == 0) config_error(node, "model.generator", "expected a list");
    std::vector<std::vector<double>> q;
    if (node[0].IsSequence()) {
        for (std::size_t i = 0; i < node.size(); ++i)
            q.push_back(number_list(node[i], "model.generator[" + std::to_string(i) + "]"));
        return q;
    }
    const auto flat = number_list(node, "model.generator");
    if (regimes == 0 || flat.size() != regimes * regimes)
        config_error(node, "model.generator",
                     "row-major list has " + std::to_string(flat.size()) + " entries, expected " +
                         std::to_string(regimes * regimes));
    for (std::size_t i = 0; i < regimes; ++i) q.emplace_back(flat.begin() + i * regimes, flat.begin() + (i + 1) * regimes);
    return q;
}

inline Method parse_method(const YAML::Node& n) {
    const auto s = scalar<std::string>(n, "solver.method");
    if (s == "gauss-seidel" || s == "gs") return Method::GaussSeidel;
    if (s == "newton") return Method::Newton;
    config_error(n, "solver.method", "unknown method '" + s + "' (gauss-seidel, newton)");
}

inline Interpolation parse_interpolation(const YAML::Node& n) {
    const auto s = scalar<std::string>(n, "solver.interpolation");
    if (s == "cubic") return Interpolation::Cubic;
    if (s == "quintic") return Interpolation::Quintic;
    config_error(n, "solver.interpolation", "unknown interpolation '" + s + "' (cubic, quintic)");
}

inline BoundaryClosure parse_closure(const YAML::Node& n) {
    const auto s = scalar<std::string>(n, "solver.closure");
    if (s == "continuation") return BoundaryClosure::Continuation;
    if (s == "exercise") return BoundaryClosure::Exercise;
    config_error(n, "solver.closure", "unknown closure '" + s + "' (continuation, exercise)");
}

inline void reject_unknown(const YAML::Node& map, const std::string& section, std::initializer_list<const char*> keys) {
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) config_error(kv.first, section.empty() ? key : section + "." + key, "unknown key");
    }
}

}  // namespace detail

inline std::string to_string(Method m) { return m == Method::Newton ? "newton" : "gauss-seidel"; }
inline std::string to_string(Interpolation i) { return i == Interpolation::Cubic ? "cubic" : "quintic"; }
inline std::string to_string(BoundaryClosure c) { return c == BoundaryClosure::Exercise ? "exercise" : "continuation"; }

/// Parses YAML text; every failure is a ConfigParse error naming the line and field.
inline RunConfig parse_run_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorCode::ConfigParse, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root.IsMap()) throw Error(ErrorCode::ConfigParse, "top level must be a mapping");
    detail::reject_unknown(root, "", {"fixture", "model", "grid", "solver", "output"});

    RunConfig c;
    bool have_model = false;
    if (const auto f = root["fixture"]) {
        c.fixture = detail::scalar<std::string>(f, "fixture");
        Fixture fx;
        try {
            fx = find_fixture(c.fixture);
        } catch (const Error& e) {
            detail::config_error(f, "fixture", e.what());
        }
        c.model = fx.model;
        c.x_max = fx.x_max;
        c.h = fx.h;
        c.solver.epsilon = fx.epsilon;
        c.assets = fx.assets;
        have_model = true;
    }

    if (const auto m = root["model"]) {
        if (!m.IsMap()) detail::config_error(m, "model", "expected a mapping");
        detail::reject_unknown(m, "model", {"strike", "expiry", "rates", "vols", "generator"});
        if (m["strike"]) c.model.strike = detail::scalar<double>(m["strike"], "model.strike");
        if (m["expiry"]) c.model.expiry = detail::scalar<double>(m["expiry"], "model.expiry");
        if (m["rates"]) c.model.rates = detail::number_list(m["rates"], "model.rates");
        if (m["vols"]) c.model.vols = detail::number_list(m["vols"], "model.vols");
        if (const auto q = m["generator"]) {
            try {
                c.model.generator = validate_generator(detail::generator_rows(q, c.model.rates.size()));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::ConfigParse) throw;
                detail::config_error(q, "model.generator", e.what());
            }
        }
        have_model = true;
    }
    if (!have_model) throw Error(ErrorCode::ConfigParse, "model: missing (give a model section or a fixture)");
    try {
        c.model.validate();
    } catch (const Error& e) {
        detail::config_error(root["model"] ? root["model"] : root["fixture"], "model", e.what());
    }

    if (const auto g = root["grid"]) {
        if (!g.IsMap()) detail::config_error(g, "grid", "expected a mapping");
        detail::reject_unknown(g, "grid", {"x_max", "h", "k"});
        if (g["x_max"]) c.x_max = detail::scalar<double>(g["x_max"], "grid.x_max");
        if (g["h"]) c.h = detail::scalar<double>(g["h"], "grid.h");
        if (const auto k = g["k"]) {
            const auto s = detail::scalar<std::string>(k, "grid.k");
            if (s == "h^2") c.k.reset();
            else c.k = detail::scalar<double>(k, "grid.k");
        }
        if (!(c.x_max > 0.0)) detail::config_error(g, "grid.x_max", "must be positive");
        if (!(c.h > 0.0) || c.h > c.x_max / 4.0) detail::config_error(g, "grid.h", "must lie in (0, x_max/4]");
        if (c.k && !(*c.k > 0.0)) detail::config_error(g["k"], "grid.k", "must be positive");
    }

    if (const auto s = root["solver"]) {
        if (!s.IsMap()) detail::config_error(s, "solver", "expected a mapping");
        detail::reject_unknown(s, "solver", {"method", "interpolation", "epsilon", "max_iterations", "closure", "parallel"});
        if (s["method"]) c.solver.method = detail::parse_method(s["method"]);
        if (s["interpolation"]) c.solver.interpolation = detail::parse_interpolation(s["interpolation"]);
        if (s["epsilon"]) c.solver.epsilon = detail::scalar<double>(s["epsilon"], "solver.epsilon");
        if (s["max_iterations"]) {
            const auto n = detail::scalar<long long>(s["max_iterations"], "solver.max_iterations");
            if (n < 1) detail::config_error(s["max_iterations"], "solver.max_iterations", "must be at least 1");
            c.solver.max_iterations = static_cast<std::size_t>(n);
        }
        if (s["closure"]) c.solver.closure = detail::parse_closure(s["closure"]);
        if (s["parallel"]) c.solver.parallel = detail::scalar<bool>(s["parallel"], "solver.parallel");
        if (!(c.solver.epsilon > 0.0)) detail::config_error(s["epsilon"], "solver.epsilon", "must be positive");
    }

    if (const auto o = root["output"]) {
        if (!o.IsMap()) detail::config_error(o, "output", "expected a mapping");
        detail::reject_unknown(o, "output", {"assets", "directory", "formats"});
        if (o["assets"]) c.assets = detail::number_list(o["assets"], "output.assets");
        for (std::size_t i = 0; i < c.assets.size(); ++i)
            if (!(c.assets[i] > 0.0))
                detail::config_error(o["assets"][i], "output.assets[" + std::to_string(i) + "]", "must be positive");
        if (o["directory"]) c.directory = detail::scalar<std::string>(o["directory"], "output.directory");
        if (const auto f = o["formats"]) {
            if (!f.IsSequence()) detail::config_error(f, "output.formats", "expected a list");
            c.formats.clear();
            for (std::size_t i = 0; i < f.size(); ++i) {
                auto s = detail::scalar<std::string>(f[i], "output.formats[" + std::to_string(i) + "]");
                if (s != "csv" && s != "json")
                    detail::config_error(f[i], "output.formats[" + std::to_string(i) + "]", "unknown format '" + s + "'");
                c.formats.push_back(std::move(s));
            }
        }
    }
    return c;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigParse, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

/// Writes a config that parses back to an equal RunConfig.
inline std::string emit_run_config(const RunConfig& c) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    if (!c.fixture.empty()) out << YAML::Key << "fixture" << YAML::Value << c.fixture;

    out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "strike" << YAML::Value << c.model.strike;
    out << YAML::Key << "expiry" << YAML::Value << c.model.expiry;
    out << YAML::Key << "rates" << YAML::Value << YAML::Flow << c.model.rates;
    out << YAML::Key << "vols" << YAML::Value << YAML::Flow << c.model.vols;
    out << YAML::Key << "generator" << YAML::Value << YAML::BeginSeq;
    for (std::size_t i = 0; i < c.model.generator.num_regimes(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < c.model.generator.num_regimes(); ++j) row.push_back(c.model.generator(i, j));
        out << YAML::Flow << row;
    }
    out << YAML::EndSeq << YAML::EndMap;

    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "x_max" << YAML::Value << c.x_max;
    out << YAML::Key << "h" << YAML::Value << c.h;
    out << YAML::Key << "k" << YAML::Value;
    if (c.k) out << *c.k;
    else out << "h^2";
    out << YAML::EndMap;

    out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "method" << YAML::Value << to_string(c.solver.method);
    out << YAML::Key << "interpolation" << YAML::Value << to_string(c.solver.interpolation);
    out << YAML::Key << "epsilon" << YAML::Value << c.solver.epsilon;
    out << YAML::Key << "max_iterations" << YAML::Value << c.solver.max_iterations;
    out << YAML::Key << "closure" << YAML::Value << to_string(c.solver.closure);
    out << YAML::Key << "parallel" << YAML::Value << c.solver.parallel;
    out << YAML::EndMap;

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "assets" << YAML::Value << YAML::Flow << c.assets;
    out << YAML::Key << "directory" << YAML::Value << c.directory;
    out << YAML::Key << "formats" << YAML::Value << YAML::Flow << c.formats;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace ffcs
