// Exercises the installed CLI binary end to end: exit codes, config file
// precedence, and byte-identical reruns. The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

static std::string g_cli;

namespace {

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<missing: " + p.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "latentgeom_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("sample --prior bogus") == 2);
    CHECK(run("traverse --scheme diagonal") == 2);
}

TEST_CASE("missing checkpoint exits with code 3") {
    CHECK(run("traverse --checkpoint /nonexistent/ckpt.json --pairs 10 --steps 4") == 3);
}

TEST_CASE("unwritable output directory exits with code 3") {
    CHECK(run("sample --n 10 --dim 2 --out /proc/definitely/not/writable") == 3);
}

TEST_CASE("sample writes files and reruns byte-identically") {
    const fs::path a = fresh_dir("sample_a");
    const fs::path b = fresh_dir("sample_b");
    const std::string flags = "sample --prior gamma --theta 2 --dim 5 --n 200 --seed 7 --out ";
    REQUIRE(run(flags + a.string()) == 0);
    REQUIRE(run(flags + b.string()) == 0);
    for (const char* f : {"samples.csv", "sample_summary.csv", "samples.json"})
        CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("config file provides defaults and flags win") {
    const fs::path dir = fresh_dir("config");
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "[sample]\n"
            << "prior=gamma\n"
            << "theta=2\n"
            << "dim=4\n"
            << "n=50\n"
            << "seed=9\n";
    }
    const fs::path out1 = dir / "from_config";
    REQUIRE(run("sample --config " + cfg.string() + " --out " + out1.string()) == 0);
    std::istringstream header(slurp(out1 / "samples.csv"));
    std::string first_line;
    std::getline(header, first_line);
    CHECK(first_line == "z0,z1,z2,z3"); // dim=4 came from the config file

    const fs::path out2 = dir / "flag_override";
    REQUIRE(run("sample --config " + cfg.string() + " --dim 2 --out " + out2.string()) == 0);
    std::istringstream header2(slurp(out2 / "samples.csv"));
    std::getline(header2, first_line);
    CHECK(first_line == "z0,z1"); // --dim wins over the config file
}

TEST_CASE("seed falls back to LATENTGEOM_SEED") {
    const fs::path a = fresh_dir("env_a");
    const fs::path b = fresh_dir("env_b");
    const std::string base = " sample --prior normal --dim 3 --n 20 --out ";
    REQUIRE(std::system(("LATENTGEOM_SEED=123 " + g_cli + base + a.string() +
                         " >/dev/null 2>&1").c_str()) == 0);
    REQUIRE(run("sample --prior normal --dim 3 --n 20 --seed 123 --out " + b.string()) == 0);
    CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));
}

TEST_CASE("mc-verify exits zero on a consistent configuration") {
    const fs::path dir = fresh_dir("verify");
    CHECK(run("mc-verify --prior normal --dim 10 --n 20000 --pairs 20000 --seed 5 --out " +
              dir.string()) == 0);
    CHECK(fs::exists(dir / "mc_report.csv"));
    CHECK(fs::exists(dir / "mc_report.json"));
}

TEST_CASE("traverse svg output is emitted when requested") {
    const fs::path dir = fresh_dir("svg");
    REQUIRE(run("traverse --prior normal --dim 8 --pairs 50 --steps 10 --seed 2 "
                "--format csv,json,svg --out " +
                dir.string()) == 0);
    const std::string svg = slurp(dir / "traverse_norms.svg");
    CHECK(svg.find("<?xml") == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-latentgeom-binary>\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    return ctx.run();
}
