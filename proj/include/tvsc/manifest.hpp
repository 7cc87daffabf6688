#pragma once

// Every CLI run emits a manifest: the exact command line, resolved config,
// FNV-1a hashes of the input file bytes, tool version, wall time, and the
// paths written. A run is reproducible from its manifest alone.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tvsc/io.hpp"

namespace tvsc {

inline constexpr const char* kToolVersion = "1.0.0";

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001B3ull;
    }
    return hash;
}

inline std::string file_hash_hex(const std::filesystem::path& path) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(read_text_file(path))));
    return buf;
}

struct RunManifest {
    std::vector<std::string> command_line;
    json config = json::object();
    std::vector<std::string> outputs;
    std::vector<std::filesystem::path> inputs;

    void start() { t0_ = std::chrono::steady_clock::now(); }

    void write(const std::filesystem::path& path) const {
        json inputs_json = json::object();
        for (const auto& p : inputs) inputs_json[p.string()] = file_hash_hex(p);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
        write_json_file(path, json{{"command_line", command_line},
                                   {"config", config},
                                   {"input_hashes", inputs_json},
                                   {"tool_version", kToolVersion},
                                   {"wall_time_s", wall},
                                   {"outputs", outputs}});
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

} // namespace tvsc
