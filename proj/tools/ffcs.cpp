// ffcs: command-line front end for the regime-switching American put solver.

#include "ffcs/config.hpp"
#include "ffcs/ffcs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kConfig = 1, kSolve = 2, kMismatch = 3 };

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ffcs::Error(ffcs::ErrorCode::ConfigParse, "cannot write '" + p.string() + "'");
    out << text;
}

std::string prices_csv(const ffcs::SolveResult& r, const std::vector<double>& assets) {
    std::ostringstream os;
    os << "S,regime,price\n";
    for (double S : assets)
        for (std::size_t m = 0; m < r.states.size(); ++m)
            os << num(S) << ',' << m + 1 << ',' << num(ffcs::price_at_asset(r, S, m)) << '\n';
    return os.str();
}

std::string greeks_csv(const ffcs::SolveResult& r, const std::vector<double>& assets) {
    std::ostringstream os;
    os << "S,regime,delta,gamma,speed,theta,delta_decay,color\n";
    for (double S : assets)
        for (std::size_t m = 0; m < r.states.size(); ++m) {
            const auto g = ffcs::greeks_at_asset(r, S, m);
            os << num(S) << ',' << m + 1 << ',' << num(g.delta) << ',' << num(g.gamma) << ',' << num(g.speed) << ','
               << num(g.theta) << ',' << num(g.delta_decay) << ',' << num(g.color) << '\n';
        }
    return os.str();
}

std::string boundary_csv(const ffcs::SolveResult& r) {
    std::ostringstream os;
    os << "tau";
    for (std::size_t m = 0; m < r.boundary.num_regimes; ++m) os << ",sf_" << m + 1;
    os << '\n';
    for (std::size_t n = 0; n < r.boundary.num_levels(); ++n) {
        os << num(static_cast<double>(n) * r.grid.k);
        for (std::size_t m = 0; m < r.boundary.num_regimes; ++m) os << ',' << num(r.boundary.values[m][n]);
        os << '\n';
    }
    return os.str();
}

json iteration_stats(const ffcs::SolveResult& r) {
    std::size_t total = 0, most = 0;
    for (auto i : r.iterations) {
        total += i;
        most = std::max(most, i);
    }
    const double steps = static_cast<double>(r.iterations.size());
    return {{"steps", r.iterations.size()},
            {"total", total},
            {"mean", steps > 0 ? static_cast<double>(total) / steps : 0.0},
            {"max", most}};
}

int cmd_run(const std::string& path, const std::string& out_override) {
    ffcs::RunConfig cfg;
    try {
        cfg = ffcs::load_run_config(path);
    } catch (const ffcs::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    if (!out_override.empty()) cfg.directory = out_override;

    ffcs::SolveResult r;
    try {
        r = ffcs::solve(cfg.model, cfg.solver_config());
    } catch (const ffcs::Error& e) {
        std::cerr << "solve failed: " << e.what() << '\n';
        return kSolve;
    }

    const fs::path dir(cfg.directory);
    fs::create_directories(dir);
    const bool csv = std::find(cfg.formats.begin(), cfg.formats.end(), "csv") != cfg.formats.end();
    const bool js = std::find(cfg.formats.begin(), cfg.formats.end(), "json") != cfg.formats.end();
    if (csv) {
        write_file(dir / "prices.csv", prices_csv(r, cfg.assets));
        write_file(dir / "greeks.csv", greeks_csv(r, cfg.assets));
        write_file(dir / "boundary.csv", boundary_csv(r));
    }
    const std::string echo = ffcs::emit_run_config(cfg);
    write_file(dir / "config.yaml", echo);
    if (js) {
        json boundary = json::array();
        for (const auto& st : r.states) boundary.push_back(st.s_f);
        json manifest = {{"config", echo},
                         {"grid", {{"x_max", r.grid.x_max}, {"h", r.grid.h}, {"k", r.grid.k}, {"M", r.grid.M}, {"N", r.grid.N}}},
                         {"iterations", iteration_stats(r)},
                         {"wall_time_seconds", r.wall_time},
                         {"final_boundary", boundary}};
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    }

    std::cout << "S";
    for (std::size_t m = 0; m < r.states.size(); ++m) std::cout << "\tregime " << m + 1;
    std::cout << '\n';
    for (double S : cfg.assets) {
        std::cout << num(S);
        for (std::size_t m = 0; m < r.states.size(); ++m) std::cout << '\t' << num(ffcs::price_at_asset(r, S, m));
        std::cout << '\n';
    }
    std::cout << "wrote " << dir.string() << " (" << r.iterations.size() << " steps, " << num(r.wall_time) << " s)\n";
    return kOk;
}

ffcs::Method method_of(const std::string& s) { return s == "newton" ? ffcs::Method::Newton : ffcs::Method::GaussSeidel; }
ffcs::Interpolation interp_of(const std::string& s) {
    return s == "cubic" ? ffcs::Interpolation::Cubic : ffcs::Interpolation::Quintic;
}

int cmd_reproduce(const std::string& id, const std::string& method, const std::string& interp, double h,
                  const std::string& closure, const std::string& out_dir) {
    ffcs::ReferenceTable table;
    try {
        table = ffcs::find_table(id);
    } catch (const ffcs::Error& e) {
        std::cerr << e.what() << '\n';
        return kConfig;
    }
    const auto m = method_of(method);
    const auto i = interp_of(interp);
    if (h <= 0.0) {
        for (const auto& c : table.columns)
            if (c.method == m && c.interpolation == i && (h <= 0.0 || c.h < h)) h = c.h;
    }
    const ffcs::ReferenceColumn* column = nullptr;
    try {
        column = &table.column_for(m, i, h);
    } catch (const ffcs::Error& e) {
        std::cerr << e.what() << '\n';
        return kConfig;
    }

    ffcs::SolverConfig base;
    base.closure = closure == "exercise" ? ffcs::BoundaryClosure::Exercise : ffcs::BoundaryClosure::Continuation;
    const auto report = ffcs::reproduce(table, *column, base);

    std::cout << "table " << table.id << ": " << table.title << " [" << column->label << ", " << closure
              << " closure]\n";
    std::ostringstream csv;
    csv << "fixture,key,regime,quantity,expected,value,abs_diff,tolerance,pass\n";
    for (const auto& c : report.cells) {
        const double diff = std::abs(c.value - c.cell.expected);
        char line[200];
        std::snprintf(line, sizeof line, "  %-16s %7.4g  reg %2zu  %-11s expected %12.6g  got %12.6g  |diff| %9.2e  %s\n",
                      c.cell.fixture.c_str(), c.cell.key, c.cell.regime + 1, std::string(ffcs::to_string(c.cell.quantity)).c_str(),
                      c.cell.expected, c.value, diff, c.pass ? "PASS" : "FAIL");
        std::cout << line;
        csv << c.cell.fixture << ',' << num(c.cell.key) << ',' << c.cell.regime + 1 << ','
            << ffcs::to_string(c.cell.quantity) << ',' << num(c.cell.expected) << ',' << num(c.value) << ','
            << num(diff) << ',' << num(c.cell.tolerance) << ',' << (c.pass ? 1 : 0) << '\n';
    }
    for (const auto& n : report.notes) std::cout << "  note: " << n << '\n';
    for (const auto& e : report.errors) std::cout << "  solve failed: " << e << '\n';
    std::cout << (report.cells.size() - report.failures()) << '/' << report.cells.size() << " cells within tolerance\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / ("table" + table.id + ".csv"), csv.str());
    }
    if (!report.errors.empty()) return kSolve;
    return report.all_pass() ? kOk : kMismatch;
}

int cmd_converge(const std::string& name, const std::vector<double>& hs, const std::string& method,
                 const std::string& interp, const std::string& out_dir) {
    ffcs::Fixture fx;
    try {
        fx = ffcs::find_fixture(name);
    } catch (const ffcs::Error& e) {
        std::cerr << e.what() << '\n';
        return kConfig;
    }
    ffcs::SolverConfig cfg = ffcs::fixture_config(fx, {}, method_of(method), interp_of(interp), hs.front());
    ffcs::RefinementStudy study;
    try {
        study = ffcs::refinement_study(fx.model, cfg, hs);
    } catch (const ffcs::Error& e) {
        std::cerr << "convergence study failed: " << e.what() << '\n';
        return e.code() == ffcs::ErrorCode::GridMismatch ? kConfig : kSolve;
    }
    std::ostringstream csv;
    csv << "h,k,max_error,rate,seconds_per_step\n";
    std::printf("%-10s %-12s %-12s %-8s %s\n", "h", "k", "max_error", "rate", "s/step");
    for (std::size_t l = 0; l < study.levels.size(); ++l) {
        const auto& lv = study.levels[l];
        const bool has_err = l + 1 < study.levels.size();
        const bool has_rate = l >= 1 && has_err;
        std::printf("%-10g %-12g %-12s %-8s %.4g\n", lv.h, lv.k, has_err ? num(lv.max_error).c_str() : "",
                    has_rate ? num(study.rates[l - 1]).c_str() : "", lv.seconds_per_step);
        csv << num(lv.h) << ',' << num(lv.k) << ',' << (has_err ? num(lv.max_error) : "") << ','
            << (has_rate ? num(study.rates[l - 1]) : "") << ',' << num(lv.seconds_per_step) << '\n';
    }
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "convergence.csv", csv.str());
    }
    return kOk;
}

int cmd_fixtures() {
    for (const auto& f : ffcs::all_fixtures())
        std::printf("%-16s %2zu regimes  h=%-5g eps=%-6g %s\n", f.name.c_str(), f.model.num_regimes(), f.h, f.epsilon,
                    f.description.c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"American put pricing under regime switching (front-fixing compact scheme)"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    auto* run = app.add_subcommand("run", "Solve a configured model and write CSV/JSON outputs");
    run->add_option("config", config_path, "YAML run configuration")->required();
    run->add_option("--out", out_override, "Output directory (overrides output.directory)");

    std::string table_id, method = "gs", interp = "quintic", closure = "continuation", rep_out;
    double h = 0.0;
    bool list_tables = false;
    auto* rep = app.add_subcommand("reproduce", "Compare a solve against an embedded reference table");
    rep->add_option("table", table_id, "Table id (1-9, 11-14)");
    rep->add_flag("--list", list_tables, "List the embedded tables");
    rep->add_option("--method", method, "gs or newton")->check(CLI::IsMember({"gs", "newton"}));
    rep->add_option("--interp", interp, "cubic or quintic")->check(CLI::IsMember({"cubic", "quintic"}));
    rep->add_option("--step", h, "Space step (default: finest tabulated for the method)");
    rep->add_option("--closure", closure, "continuation or exercise")->check(CLI::IsMember({"continuation", "exercise"}));
    rep->add_option("--out", rep_out, "Write a per-cell CSV to this directory");

    std::string fixture, conv_method = "gs", conv_interp = "quintic", conv_out;
    std::vector<double> hs;
    auto* conv = app.add_subcommand("converge", "Grid-refinement study with k = h^2");
    conv->add_option("fixture", fixture, "Fixture name")->required();
    conv->add_option("--steps", hs, "Halving list of space steps")->required()->delimiter(',');
    conv->add_option("--method", conv_method, "gs or newton")->check(CLI::IsMember({"gs", "newton"}));
    conv->add_option("--interp", conv_interp, "cubic or quintic")->check(CLI::IsMember({"cubic", "quintic"}));
    conv->add_option("--out", conv_out, "Write convergence.csv to this directory");

    auto* fix = app.add_subcommand("fixtures", "Built-in market models");
    fix->add_subcommand("list", "List fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*run) return cmd_run(config_path, out_override);
        if (*rep) {
            if (list_tables) {
                for (const auto& t : ffcs::reference_tables()) {
                    std::printf("%-3s %s\n", t.id.c_str(), t.title.c_str());
                    for (const auto& c : t.columns) std::printf("      %s (%zu cells)\n", c.label.c_str(), c.cells.size());
                }
                return kOk;
            }
            if (table_id.empty()) {
                std::cerr << "reproduce: a table id is required (see --list)\n";
                return kConfig;
            }
            return cmd_reproduce(table_id, method, interp, h, closure, rep_out);
        }
        if (*conv) return cmd_converge(fixture, hs, conv_method, conv_interp, conv_out);
        if (*fix) return cmd_fixtures();
    } catch (const ffcs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ffcs::ErrorCode::ConfigParse ? kConfig : kSolve;
    }
    return kOk;
}
