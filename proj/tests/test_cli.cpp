#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / "ffcs_cli_test.log";
    const std::string cmd = std::string("\"") + FFCS_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    o.out = ss.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("ffcs_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const auto p = dir / "run.yaml";
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("run writes the expected files and headers", "[cli]") {
    const auto dir = scratch("run");
    const auto cfg = write_config(dir, "fixture: two-regime-ex1\ngrid:\n  h: 0.1\noutput:\n  assets: [6, 9, 12]\n");
    const auto r = run("run \"" + cfg.string() + "\" --out \"" + (dir / "out").string() + "\"");
    INFO(r.out);
    REQUIRE(r.code == 0);
    for (const char* f : {"prices.csv", "greeks.csv", "boundary.csv", "config.yaml", "manifest.json"})
        CHECK(fs::exists(dir / "out" / f));
    const auto prices = slurp(dir / "out" / "prices.csv");
    CHECK(first_line(prices) == "S,regime,price");
    CHECK(std::count(prices.begin(), prices.end(), '\n') == 7);
    CHECK(first_line(slurp(dir / "out" / "greeks.csv")) == "S,regime,delta,gamma,speed,theta,delta_decay,color");
    CHECK(first_line(slurp(dir / "out" / "boundary.csv")) == "tau,sf_1,sf_2");
    const auto manifest = slurp(dir / "out" / "manifest.json");
    CHECK(manifest.find("\"iterations\"") != std::string::npos);
    CHECK(manifest.find("\"final_boundary\"") != std::string::npos);
}

TEST_CASE("run output is byte-identical across runs", "[cli]") {
    const auto dir = scratch("repeat");
    const auto cfg = write_config(dir, "fixture: two-regime-ex3\ngrid:\n  h: 0.1\n");
    REQUIRE(run("run \"" + cfg.string() + "\" --out \"" + (dir / "a").string() + "\"").code == 0);
    REQUIRE(run("run \"" + cfg.string() + "\" --out \"" + (dir / "b").string() + "\"").code == 0);
    for (const char* f : {"prices.csv", "greeks.csv", "boundary.csv"})
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("the echoed config reruns to the same prices", "[cli]") {
    const auto dir = scratch("echo");
    const auto cfg = write_config(dir, "fixture: two-regime-ex1\ngrid:\n  h: 0.1\n");
    REQUIRE(run("run \"" + cfg.string() + "\" --out \"" + (dir / "a").string() + "\"").code == 0);
    REQUIRE(run("run \"" + (dir / "a" / "config.yaml").string() + "\" --out \"" + (dir / "b").string() + "\"").code ==
            0);
    CHECK(slurp(dir / "a" / "prices.csv") == slurp(dir / "b" / "prices.csv"));
}

TEST_CASE("no switching: regime 2 at S = 6 is intrinsic", "[cli]") {
    const auto dir = scratch("nojump");
    const auto cfg = write_config(dir, "fixture: no-jump-ex2\ngrid:\n  h: 0.05\noutput:\n  assets: [6]\n  formats: [csv]\n");
    REQUIRE(run("run \"" + cfg.string() + "\" --out \"" + dir.string() + "\"").code == 0);
    const auto prices = slurp(dir / "prices.csv");
    CHECK(prices.find("\n6,2,3\n") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("exit codes", "[cli]") {
    const std::string configs = FFCS_SOURCE_DIR "/configs/";
    const auto bad = run("run \"" + configs + "bad_generator.yaml\"");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("line ") != std::string::npos);
    CHECK(bad.out.find("RowSumViolation") != std::string::npos);

    CHECK(run("run /nonexistent/run.yaml").code == 1);
    CHECK(run("").code == 1);
    CHECK(run("reproduce 99").code == 1);
    CHECK(run("reproduce").code == 1);
    CHECK(run("converge two-regime-ex1 --steps 0.1,0.04").code == 1);

    const auto dir = scratch("exit");
    const auto cfg =
        write_config(dir, "fixture: two-regime-ex1\ngrid:\n  h: 0.1\nsolver:\n  max_iterations: 1\n");
    const auto stuck = run("run \"" + cfg.string() + "\" --out \"" + dir.string() + "\"");
    CHECK(stuck.code == 2);
    CHECK(stuck.out.find("NoConvergence") != std::string::npos);

    const auto pass = run("reproduce 1 --step 0.1 --interp cubic");
    CHECK(pass.code == 0);
    CHECK(pass.out.find("10/10 cells within tolerance") != std::string::npos);
    const auto miss = run("reproduce 2 --step 0.1 --interp cubic");
    CHECK(miss.code == 3);
    CHECK(miss.out.find("FAIL") != std::string::npos);
}

TEST_CASE("listing commands", "[cli]") {
    const auto fx = run("fixtures list");
    CHECK(fx.code == 0);
    for (const char* name :
         {"two-regime-ex1", "no-jump-ex2", "two-regime-ex3", "four-regime", "eight-regime", "sixteen-regime"})
        CHECK(fx.out.find(name) != std::string::npos);
    const auto tables = run("reproduce --list");
    CHECK(tables.code == 0);
    CHECK(tables.out.find("GS+quintic h=0.01") != std::string::npos);
    CHECK(run("--help").code == 0);
}

TEST_CASE("converge writes a rate table", "[cli]") {
    const auto dir = scratch("converge");
    const auto r = run("converge two-regime-ex1 --steps 0.2,0.1,0.05 --out \"" + dir.string() + "\"");
    INFO(r.out);
    REQUIRE(r.code == 0);
    const auto csv = slurp(dir / "convergence.csv");
    CHECK(first_line(csv) == "h,k,max_error,rate,seconds_per_step");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
