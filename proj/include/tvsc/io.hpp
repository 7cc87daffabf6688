#pragma once

// File formats:
//   GridImage      plain-text CSV (one grid row per line) with a JSON sidecar
//                  {width, height, h, min, max}; binary 8-bit PGM (P5) after
//                  affine [min,max] -> [0,255] quantization for viewing.
//   RadialProfile  two-column CSV "r,value" whose first line is a JSON header
//                  comment: # {"R":..., "n":..., "dim":...}
//   LevelSet       PGM mask (0/255) plus JSON {level, energy, area, perimeter}.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvsc/errors.hpp"
#include "tvsc/grid.hpp"
#include "tvsc/radial.hpp"

namespace tvsc {

using json = nlohmann::json;

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadInput("cannot open for writing: " + path.string());
    out << text;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

inline json read_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw BadInput("invalid JSON in " + path.string() + ": " + e.what());
    }
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    std::filesystem::path p = path;
    p += ".json";
    return p;
}

inline json grid_meta(const GridImage& g) {
    return json{{"width", g.width},
                {"height", g.height},
                {"h", g.h},
                {"min", g.min_value()},
                {"max", g.max_value()}};
}

inline void write_grid_csv(const std::filesystem::path& path, const GridImage& g,
                           bool with_sidecar = true) {
    std::ostringstream out;
    out.precision(17);
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            if (x) out << ',';
            out << g(x, y);
        }
        out << '\n';
    }
    write_text_file(path, out.str());
    if (with_sidecar) write_json_file(sidecar_path(path), grid_meta(g));
}

inline GridImage read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open for reading: " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw BadInput("bad CSV value '" + cell + "' in " + path.string());
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw BadInput("empty CSV: " + path.string());
    const std::size_t w = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != w) throw BadInput("ragged CSV rows in " + path.string());

    double h = 1.0;
    const auto side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
        const json meta = read_json_file(side);
        if (meta.contains("h")) h = meta["h"].get<double>();
    }
    GridImage g(static_cast<int>(w), static_cast<int>(rows.size()), h);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) g(x, y) = rows[y][x];
    validate(g);
    return g;
}

inline void write_grid_pgm(const std::filesystem::path& path, const GridImage& g,
                           bool with_sidecar = true) {
    const double lo = g.min_value(), hi = g.max_value();
    const double span = hi > lo ? hi - lo : 1.0;
    std::string bytes;
    bytes.reserve(g.size());
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const int q = static_cast<int>(std::lround((g(x, y) - lo) / span * 255.0));
            bytes.push_back(static_cast<char>(std::clamp(q, 0, 255)));
        }
    std::ostringstream out;
    out << "P5\n" << g.width << ' ' << g.height << "\n255\n" << bytes;
    write_text_file(path, out.str());
    if (with_sidecar) write_json_file(sidecar_path(path), grid_meta(g));
}

inline void write_mask_pgm(const std::filesystem::path& path, const LevelSet& e) {
    std::string bytes;
    bytes.reserve(e.mask.size());
    for (auto m : e.mask) bytes.push_back(static_cast<char>(m ? 255 : 0));
    std::ostringstream out;
    out << "P5\n" << e.width << ' ' << e.height << "\n255\n" << bytes;
    write_text_file(path, out.str());
}

inline GridImage read_grid_pgm(const std::filesystem::path& path) {
    const std::string data = read_text_file(path);
    std::istringstream in(data);
    std::string magic;
    in >> magic;
    if (magic != "P5") throw BadInput("not a binary PGM (P5): " + path.string());
    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw BadInput("truncated PGM header: " + path.string());
    };
    const int w = std::stoi(next_token());
    const int ht = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w < 1 || ht < 1 || maxval < 1 || maxval > 255)
        throw BadInput("unsupported PGM header: " + path.string());
    in.get(); // single whitespace after maxval
    const std::size_t offset = static_cast<std::size_t>(in.tellg());
    if (data.size() < offset + static_cast<std::size_t>(w) * ht)
        throw BadInput("truncated PGM pixel data: " + path.string());

    double lo = 0.0, hi = 1.0, h = 1.0;
    const auto side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
        const json meta = read_json_file(side);
        if (meta.contains("h")) h = meta["h"].get<double>();
        if (meta.contains("min")) lo = meta["min"].get<double>();
        if (meta.contains("max")) hi = meta["max"].get<double>();
    }
    GridImage g(w, ht, h);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto q = static_cast<unsigned char>(data[offset + i]);
        g.values[i] = lo + (hi - lo) * static_cast<double>(q) / maxval;
    }
    return g;
}

inline void write_radial_csv(const std::filesystem::path& path, const RadialProfile& p) {
    std::ostringstream out;
    out.precision(17);
    out << "# " << json{{"R", p.R}, {"n", p.n}, {"dim", p.dim}}.dump() << '\n';
    for (int i = 0; i < p.n; ++i) out << p.r(i) << ',' << p.values[i] << '\n';
    write_text_file(path, out.str());
}

inline RadialProfile read_radial_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
        throw BadInput("radial CSV is missing its JSON header line: " + path.string());
    json header;
    try {
        header = json::parse(line.substr(1));
    } catch (const json::parse_error& e) {
        throw BadInput("bad radial CSV header in " + path.string() + ": " + e.what());
    }
    RadialProfile p(header.at("R").get<double>(), header.at("n").get<int>(),
                    header.at("dim").get<int>());
    int i = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw BadInput("bad radial CSV row: " + line);
        if (i >= p.n) throw BadInput("too many rows in radial CSV: " + path.string());
        p.values[i++] = std::stod(line.substr(comma + 1));
    }
    if (i != p.n) throw BadInput("row count does not match n in " + path.string());
    validate(p);
    return p;
}

// Dual field as a CSV pair <base>_x.csv / <base>_y.csv.
inline void write_dual_csv(const std::filesystem::path& base, const DualField& z) {
    GridImage cx(z.width, z.height, z.h), cy(z.width, z.height, z.h);
    cx.values = z.x;
    cy.values = z.y;
    std::filesystem::path px = base, py = base;
    px += "_x.csv";
    py += "_y.csv";
    write_grid_csv(px, cx, false);
    write_grid_csv(py, cy, false);
}

// Detects radial CSV (JSON header line) versus grid CSV / PGM by extension
// and first byte.
enum class DatumFileKind { grid_csv, radial_csv, pgm };

inline DatumFileKind sniff_datum_file(const std::filesystem::path& path) {
    if (path.extension() == ".pgm") return DatumFileKind::pgm;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open for reading: " + path.string());
    const int c = in.peek();
    return c == '#' ? DatumFileKind::radial_csv : DatumFileKind::grid_csv;
}

// Run-length encoding of a mask (row-major), for compact JSON reports.
inline json rle_encode(const std::vector<std::uint8_t>& mask) {
    json runs = json::array();
    std::size_t i = 0;
    while (i < mask.size()) {
        std::size_t j = i;
        while (j < mask.size() && mask[j] == mask[i]) ++j;
        runs.push_back(j - i);
        i = j;
    }
    return json{{"first", mask.empty() ? 0 : static_cast<int>(mask[0])}, {"runs", runs}};
}

inline std::vector<std::uint8_t> rle_decode(const json& j) {
    std::vector<std::uint8_t> mask;
    std::uint8_t v = static_cast<std::uint8_t>(j.at("first").get<int>());
    for (const auto& run : j.at("runs")) {
        mask.insert(mask.end(), run.get<std::size_t>(), v);
        v = v ? 0 : 1;
    }
    return mask;
}

} // namespace tvsc
