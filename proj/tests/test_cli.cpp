// End-to-end checks of the tvsc executable: the gen -> denoise -> analyze
// pipeline, exit codes, and manifest emission. The binary path comes from
// the TVSC_CLI environment variable (set by ctest) or argv[1].

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "tvsc/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    if (const char* env = std::getenv("TVSC_CLI")) return env;
    return "";
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvsc_cli_" + std::to_string(std::rand()) + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("gen/denoise/analyze pipeline produces a two-zone report") {
    if (cli_path().empty()) {
        SKIP("TVSC_CLI not set");
    }
    TempDir tmp;
    const std::string g = (tmp.path / "g.csv").string();
    const std::string u = (tmp.path / "u.csv").string();
    const std::string rep = (tmp.path / "stair.json").string();

    REQUIRE(run_cli("gen disc --out " + g + " --width 64 --height 64 --spacing 0.125") == 0);
    REQUIRE(run_cli("denoise --in " + g + " --lambda 0.1 --out-u " + u) == 0);
    REQUIRE(run_cli("analyze --in " + g + " --lambda 0.1 --u " + u + " --report " + rep) == 0);

    const tvsc::json j = tvsc::read_json_file(rep);
    REQUIRE(j["zones"].size() == 2);
    REQUIRE(j["strict_clipping"] == true);
    REQUIRE(j["flat_area"].get<double>() > 0.0);

    // every run wrote a manifest with input hashes
    const tvsc::json m = tvsc::read_json_file(u + ".manifest.json");
    REQUIRE(m["input_hashes"].size() == 1);
    REQUIRE(m["outputs"][0] == u);
}

TEST_CASE("radial pipeline through the same subcommands") {
    if (cli_path().empty()) {
        SKIP("TVSC_CLI not set");
    }
    TempDir tmp;
    const std::string g = (tmp.path / "p.csv").string();
    const std::string u = (tmp.path / "pu.csv").string();
    const std::string rep = (tmp.path / "rep.json").string();
    REQUIRE(run_cli("gen radial_profile --out " + g + " --n 512 --R 4 --dim 2") == 0);
    REQUIRE(run_cli("denoise --in " + g + " --lambda 0.15 --out-u " + u + " --report " +
                    rep) == 0);
    const tvsc::json j = tvsc::read_json_file(rep);
    REQUIRE(j["converged"] == true);
    REQUIRE(j["kkt_residual"].get<double>() <= 1e-8);
    const tvsc::RadialProfile up = tvsc::read_radial_csv(u);
    REQUIRE(std::abs(up.values[5] - 0.7) <= 1e-3);
}

TEST_CASE("exit codes: 2 for bad input") {
    if (cli_path().empty()) {
        SKIP("TVSC_CLI not set");
    }
    TempDir tmp;
    const std::string g = (tmp.path / "g.csv").string();
    REQUIRE(run_cli("gen disc --out " + g + " --width 32 --height 32 --spacing 0.25") == 0);
    REQUIRE(run_cli("denoise --in " + g + " --lambda -1 --out-u /dev/null") == 2);
    REQUIRE(run_cli("denoise --in " + tmp.path.string() + "/missing.csv --lambda 0.1 --out-u /dev/null") == 2);
    REQUIRE(run_cli("gen nosuchkind --out " + g) == 2);
    REQUIRE(run_cli("verify no-such-suite") == 2);
}

TEST_CASE("exit code 3 on non-convergence") {
    if (cli_path().empty()) {
        SKIP("TVSC_CLI not set");
    }
    TempDir tmp;
    const std::string g = (tmp.path / "g.csv").string();
    REQUIRE(run_cli("gen disc --out " + g + " --width 32 --height 32 --spacing 0.25") == 0);
    REQUIRE(run_cli("denoise --in " + g + " --lambda 0.1 --max-iters 2 --tol 1e-14 --out-u /dev/null") == 3);
}

TEST_CASE("verify lists its suites") {
    if (cli_path().empty()) {
        SKIP("TVSC_CLI not set");
    }
    REQUIRE(run_cli("verify --list") == 0);
}
