#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_main.hpp"
#include "orbitgrowth/errors.hpp"
#include "orbitgrowth/report.hpp"

using namespace orbitgrowth;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const std::filesystem::path p =
        std::filesystem::temp_directory_path() / ("orbitgrowth_test_" + name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"orbitgrowth"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config parsing: full round trip", "[report][config]") {
    const std::string text =
        "# demo system\n"
        "mode = orbit-census\n"
        "map.1.num = [1, 0, 0]   # X^2\n"
        "map.1.den = [1]\n"
        "map.2.num = [1 0 0 0]\n"  // whitespace separators are fine
        "map.2.den = [1]\n"
        "point = [2, 1]\n"
        "X_grid = [3.5, 70.25]\n"
        "n_max = 9\n"
        "budget = 50000\n"
        "tol = 1e-13\n";
    const SystemConfig cfg = parse_config(text);
    REQUIRE(cfg.maps.size() == 2);
    CHECK(cfg.maps[0].first == std::vector<BigInt>{1, 0, 0});
    CHECK(cfg.maps[1].first == std::vector<BigInt>{1, 0, 0, 0});
    REQUIRE(cfg.point);
    CHECK(cfg.point->first == 2);
    CHECK(cfg.point->second == 1);
    CHECK(cfg.X_grid == std::vector<double>{3.5, 70.25});
    CHECK(cfg.n_max == 9);
    CHECK(cfg.budget == 50000);
    CHECK(cfg.mode == "orbit-census");

    // parsing the canonical echo reproduces the configuration exactly
    CHECK(parse_config(cfg.canonical()) == cfg);
}

TEST_CASE("config parsing: canonical echo is stable", "[report][config]") {
    SystemConfig cfg;
    cfg.degrees = WeightVector{2, 3};
    cfg.X = 1234.5678901234567;
    cfg.s = 1.0;
    const std::string echo = cfg.canonical();
    CHECK(parse_config(echo) == cfg);
    CHECK(parse_config(parse_config(echo).canonical()) == cfg);
}

TEST_CASE("config parsing: diagnostics carry line and field", "[report][config][errors]") {
    const auto expect_error = [](const std::string& text, int line,
                                 const std::string& field) {
        try {
            parse_config(text);
            FAIL("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(e.line() == line);
            CHECK(e.field() == field);
        }
    };
    expect_error("degrees = [2, 3]\nbogus = 1\n", 2, "bogus");
    expect_error("X = 5\nX = 6\n", 2, "X");                  // duplicate
    expect_error("degrees = [2, x]\n", 1, "degrees");        // bad integer
    expect_error("degrees\n", 1, "degrees");                 // no '='
    expect_error("degrees = [1, 2]\n", 1, "degrees");        // weight below 2
    expect_error("point = [1, 2, 3]\n", 1, "point");         // wrong arity
    expect_error("mode = fly\n", 1, "mode");                 // unknown mode
    expect_error("X = []\n", 1, "X");                        // not a scalar
    expect_error("map.1.num = [1,0,0]\n", 0, "map.1.den");   // missing half
    expect_error("map.2.num = [1,0,0]\nmap.2.den = [1]\n", 0, "map.1");  // gap
    expect_error("X = 1\nX_grid = [2]\n", 0, "X");           // both forms
    expect_error("map.1.nun = [1]\n", 1, "map.1.nun");       // bad part name
}

TEST_CASE("reports: golden CSV bytes", "[report][emit]") {
    SystemConfig cfg;
    cfg.degrees = WeightVector{2, 3};
    const Report r = run_command("rho", cfg);
    std::ostringstream oss;
    emit_csv(r, oss);
    const std::string expected =
        "# orbitgrowth 1.0.0\n"
        "# command: rho\n"
        "# config: degrees = [2, 3]\n"
        "record,degrees,rho,residual,code,detail\n"
        "row,\"[2, 3]\",0.787884911026,2.22044604925e-16,,\n";
    CHECK(oss.str() == expected);
}

TEST_CASE("reports: golden JSON lines bytes", "[report][emit]") {
    SystemConfig cfg;
    cfg.degrees = WeightVector{4, 8};
    const Report r = run_command("classify", cfg);
    std::ostringstream oss;
    emit_jsonl(r, oss);
    const std::string expected =
        "{\"command\":\"classify\",\"config\":\"degrees = [4, 8]\\n\","
        "\"record\":\"meta\",\"version\":\"1.0.0\"}\n"
        "{\"base\":2,\"cyclic\":true,\"degrees\":\"[4, 8]\","
        "\"exponents\":\"[2, 3]\",\"record\":\"row\"}\n";
    CHECK(oss.str() == expected);
}

TEST_CASE("reports: emission is byte-deterministic", "[report][emit]") {
    const std::string text =
        "map.1.num = [1, 0, 0]\nmap.1.den = [1]\n"
        "map.2.num = [1, 0, 0, 0]\nmap.2.den = [1]\n"
        "point = [2, 1]\nX = 50.0\n";
    const SystemConfig cfg = parse_config(text);
    std::ostringstream a, b;
    emit_csv(run_command("orbit-census", cfg), a);
    emit_csv(run_command("orbit-census", cfg), b);
    CHECK(a.str() == b.str());
    std::ostringstream ja, jb;
    emit_jsonl(run_command("theta", cfg), ja);
    emit_jsonl(run_command("theta", cfg), jb);
    CHECK(ja.str() == jb.str());
}

TEST_CASE("reports: missing required fields are parse errors", "[report][errors]") {
    SystemConfig cfg;
    cfg.degrees = WeightVector{2, 3};
    CHECK_THROWS_AS(run_command("orbit-census", cfg), parse_error);  // no maps
    CHECK_THROWS_AS(run_command("preperiodic", cfg), parse_error);
    SystemConfig maps_only = parse_config(
        "map.1.num = [1, 0, 0]\nmap.1.den = [1]\nmap.2.num = [1, 0, 0, 0]\n"
        "map.2.den = [1]\n");
    CHECK_THROWS_AS(run_command("orbit-census", maps_only), parse_error);  // no point
    CHECK_NOTHROW(run_command("rho", maps_only));  // degrees derived from maps
}

TEST_CASE("cli: success paths and determinism", "[cli]") {
    const auto cfg = temp_file("pow.cfg",
                               "map.1.num = [1, 0, 0]\nmap.1.den = [1]\n"
                               "map.2.num = [1, 0, 0, 0]\nmap.2.den = [1]\n"
                               "point = [2, 1]\nX = 6.9314718055994531\n");
    const auto out1 = std::filesystem::temp_directory_path() / "orbitgrowth_out1.csv";
    const auto out2 = std::filesystem::temp_directory_path() / "orbitgrowth_out2.csv";

    CHECK(run_cli({"orbit-census", "--config", cfg.string(), "--out",
                   out1.string()}) == 0);
    CHECK(run_cli({"orbit-census", "--config", cfg.string(), "--out",
                   out2.string()}) == 0);
    const std::string text1 = slurp(out1);
    CHECK(text1 == slurp(out2));
    CHECK(text1.find("row,6.9314718056,7,6,") != std::string::npos);

    // jsonl format
    CHECK(run_cli({"orbit-census", "--config", cfg.string(), "--format", "jsonl",
                   "--out", out1.string()}) == 0);
    const std::string jtext = slurp(out1);
    CHECK(jtext.rfind("{\"command\":\"orbit-census\"", 0) == 0);
    CHECK(jtext.find("\"record\":\"row\"") != std::string::npos);
}

TEST_CASE("cli: exit codes", "[cli][errors]") {
    const auto out = std::filesystem::temp_directory_path() / "orbitgrowth_out3.csv";

    // 2: config parse error
    const auto bad = temp_file("bad.cfg", "degrees = [2, 3]\nwhat = 1\n");
    CHECK(run_cli({"rho", "--config", bad.string(), "--out", out.string()}) == 2);

    // 2: missing config file
    CHECK(run_cli({"rho", "--config", "/nonexistent/nowhere.cfg"}) == 2);

    // 2: bad flag value
    const auto deg = temp_file("deg.cfg", "degrees = [2, 3]\nX = 100\n");
    CHECK(run_cli({"rho", "--config", deg.string(), "--format", "yaml"}) == 2);

    // 2: missing required field for the chosen command
    CHECK(run_cli({"orbit-census", "--config", deg.string(), "--out",
                   out.string()}) == 2);

    // 0: fine
    CHECK(run_cli({"count-words", "--config", deg.string(), "--out",
                   out.string()}) == 0);
    CHECK(slurp(out).find("row,100,54,,") != std::string::npos);

    // 1: domain error (preperiodic base point for theta)
    const auto pre = temp_file("pre.cfg",
                               "map.1.num = [1, 0, 0]\nmap.1.den = [1]\n"
                               "map.2.num = [1, 0, 0, 0]\nmap.2.den = [1]\n"
                               "point = [1, 1]\nX = 5.0\n");
    CHECK(run_cli({"theta", "--config", pre.string(), "--out", out.string()}) == 1);

    // 3: budget exhaustion, partial output still written
    const auto pow = temp_file("pow2.cfg",
                               "map.1.num = [1, 0, 0]\nmap.1.den = [1]\n"
                               "map.2.num = [1, 0, 0, 0]\nmap.2.den = [1]\n"
                               "point = [2, 1]\nX = 69.314718055994533\n");
    CHECK(run_cli({"orbit-census", "--config", pow.string(), "--budget", "10",
                   "--out", out.string()}) == 3);
    const std::string partial = slurp(out);
    CHECK(partial.find("warning") != std::string::npos);
    CHECK(partial.find("budget-exhausted") != std::string::npos);
    CHECK(partial.find("row,") != std::string::npos);  // partial rows present
}

TEST_CASE("cli: preperiodic census is a structured warning", "[cli]") {
    const auto out = std::filesystem::temp_directory_path() / "orbitgrowth_out4.csv";
    const auto pre = temp_file("pre2.cfg",
                               "map.1.num = [1, 0, 0]\nmap.1.den = [1]\n"
                               "map.2.num = [1, 0, 0, 0]\nmap.2.den = [1]\n"
                               "point = [1, 1]\nX = 5.0\n");
    CHECK(run_cli({"orbit-census", "--config", pre.string(), "--out",
                   out.string()}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("warning") != std::string::npos);
    CHECK(text.find("preperiodic") != std::string::npos);
    CHECK(text.find("witness") != std::string::npos);
}
