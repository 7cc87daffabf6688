#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "tvsc/datagen.hpp"
#include "tvsc/io.hpp"
#include "tvsc/manifest.hpp"

using namespace tvsc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvsc_test_" + std::to_string(std::rand()) + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

GridImage random_grid(int w, int h, double spacing, std::uint64_t seed) {
    GridImage g(w, h, spacing);
    CounterRng rng(seed);
    for (double& v : g.values) v = 2.0 * rng.next_unit() - 0.7;
    return g;
}

} // namespace

TEST_CASE("grid CSV round trip is exact, sidecar carries the spacing") {
    TempDir tmp;
    const GridImage g = random_grid(17, 9, 0.37, 5);
    const fs::path p = tmp.path / "g.csv";
    write_grid_csv(p, g);
    REQUIRE(fs::exists(sidecar_path(p)));
    const GridImage back = read_grid_csv(p);
    REQUIRE(back.width == g.width);
    REQUIRE(back.height == g.height);
    REQUIRE(back.h == g.h);
    REQUIRE(back.values == g.values);
}

TEST_CASE("radial CSV round trip is exact with its JSON header") {
    TempDir tmp;
    RadialProfile p(4.0, 129, 3);
    CounterRng rng(6);
    for (double& v : p.values) v = rng.next_unit();
    const fs::path path = tmp.path / "p.csv";
    write_radial_csv(path, p);
    const RadialProfile back = read_radial_csv(path);
    REQUIRE(back.R == p.R);
    REQUIRE(back.n == p.n);
    REQUIRE(back.dim == p.dim);
    REQUIRE(back.values == p.values);

    const std::string text = read_text_file(path);
    REQUIRE(text.rfind("# {", 0) == 0);
}

TEST_CASE("pgm quantization round trip is within one bin") {
    TempDir tmp;
    const GridImage g = random_grid(23, 11, 0.25, 7);
    const fs::path p = tmp.path / "g.pgm";
    write_grid_pgm(p, g);
    const GridImage back = read_grid_pgm(p);
    REQUIRE(back.h == g.h);
    const double bin = g.oscillation() / 255.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        REQUIRE(std::abs(back.values[i] - g.values[i]) <= 0.51 * bin);
}

TEST_CASE("mask pgm uses 0 and 255 only") {
    TempDir tmp;
    LevelSet e(8, 5, 1.0, 0.3);
    for (std::size_t i = 0; i < e.mask.size(); i += 2) e.mask[i] = 1;
    const fs::path p = tmp.path / "m.pgm";
    write_mask_pgm(p, e);
    const std::string data = read_text_file(p);
    const std::size_t header = data.find("255\n") + 4;
    for (std::size_t i = header; i < data.size(); ++i) {
        const unsigned char c = data[i];
        REQUIRE((c == 0 || c == 255));
    }
}

TEST_CASE("datum file sniffing") {
    TempDir tmp;
    const GridImage g = random_grid(6, 6, 1.0, 8);
    write_grid_csv(tmp.path / "g.csv", g);
    write_grid_pgm(tmp.path / "g.pgm", g);
    RadialProfile p(1.0, 8, 1, 0.5);
    write_radial_csv(tmp.path / "p.csv", p);
    REQUIRE(sniff_datum_file(tmp.path / "g.csv") == DatumFileKind::grid_csv);
    REQUIRE(sniff_datum_file(tmp.path / "g.pgm") == DatumFileKind::pgm);
    REQUIRE(sniff_datum_file(tmp.path / "p.csv") == DatumFileKind::radial_csv);
}

TEST_CASE("rle round trip on random masks") {
    CounterRng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint8_t> mask(1 + rng.next_u64() % 300);
        for (auto& m : mask) m = (rng.next_u64() & 3) == 0;
        REQUIRE(rle_decode(rle_encode(mask)) == mask);
    }
    REQUIRE(rle_decode(rle_encode({})).empty());
}

TEST_CASE("io errors are BadInput") {
    TempDir tmp;
    REQUIRE_THROWS_AS(read_grid_csv(tmp.path / "missing.csv"), BadInput);
    write_text_file(tmp.path / "ragged.csv", "1,2,3\n1,2\n");
    REQUIRE_THROWS_AS(read_grid_csv(tmp.path / "ragged.csv"), BadInput);
    write_text_file(tmp.path / "noheader.csv", "0.1,0.2\n");
    REQUIRE_THROWS_AS(read_radial_csv(tmp.path / "noheader.csv"), BadInput);
    write_text_file(tmp.path / "bad.pgm", "P2\n2 2\n255\n");
    REQUIRE_THROWS_AS(read_grid_pgm(tmp.path / "bad.pgm"), BadInput);
    write_text_file(tmp.path / "bad.json", "{oops");
    REQUIRE_THROWS_AS(read_json_file(tmp.path / "bad.json"), BadInput);
}

TEST_CASE("run manifest captures inputs, outputs, and version") {
    TempDir tmp;
    write_text_file(tmp.path / "input.csv", "1,2\n3,4\n");
    RunManifest m;
    m.command_line = {"tvsc", "denoise", "--in", "input.csv"};
    m.config = json{{"lambda", 0.1}};
    m.inputs = {tmp.path / "input.csv"};
    m.outputs = {"u.csv"};
    const fs::path p = tmp.path / "run.manifest.json";
    m.write(p);
    const json j = read_json_file(p);
    REQUIRE(j["tool_version"] == kToolVersion);
    REQUIRE(j["config"]["lambda"] == 0.1);
    REQUIRE(j["command_line"].size() == 4);
    REQUIRE(j["input_hashes"].size() == 1);
    const std::string h = j["input_hashes"].begin().value();
    REQUIRE(h.size() == 16);
    REQUIRE(h == file_hash_hex(tmp.path / "input.csv"));
    REQUIRE(j["wall_time_s"].get<double>() >= 0.0);
}
