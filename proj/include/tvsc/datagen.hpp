#pragma once

// Reproducible synthetic data. Characteristic functions are rasterized by
// pixel-centre membership (no antialiasing) so level-set oracles see crisp
// binary data. Noise comes from a 64-bit counter-based generator with the
// Box-Muller transform: same seed, same bytes.

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tvsc/errors.hpp"
#include "tvsc/grid.hpp"
#include "tvsc/radial.hpp"

namespace tvsc {

// splitmix64 of (seed, counter); stateless across calls with the same inputs.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;

    CounterRng() = default;
    explicit CounterRng(std::uint64_t seed_, std::uint64_t counter_ = 0)
        : seed(seed_), counter(counter_) {}

    std::uint64_t next_u64() {
        std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (++counter);
        x ^= x >> 30;
        x *= 0xBF58476D1CE4E5B9ull;
        x ^= x >> 27;
        x *= 0x94D049BB133111EBull;
        x ^= x >> 31;
        return x;
    }
    // uniform in (0,1)
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }
    double next_gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit(), u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

enum class DatumKind {
    disc,           // 2-D characteristic of a disc
    two_squares,    // 2-D union of two unit squares touching at one vertex
    convex_polygon, // 2-D characteristic of a convex polygon
    radial_profile, // radial characteristic of [0, r0)
    ramp,           // radial 1 - r/R
    bumps,          // radial smooth profile with two local maxima
    noisy,          // 2-D pure Gaussian noise field
};

struct DatumSpec {
    DatumKind kind = DatumKind::disc;
    // 2-D grid: domain is the rectangle centred at (cx, cy) with extents
    // width*h by height*h; pixel centres at cx + (i + 1/2 - width/2) h.
    int width = 256;
    int height = 256;
    double h = 8.0 / 256.0;
    double cx = 0.0;
    double cy = 0.0;
    // geometry
    double radius = 1.0;                                // disc / radial_profile
    double disc_cx = 0.0, disc_cy = 0.0;                // disc centre
    std::vector<std::pair<double, double>> vertices;    // convex_polygon
    // radial grid
    double R = 4.0;
    int n = 1024;
    int dim = 2;
    // noise
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

using Datum = std::variant<GridImage, RadialProfile>;

inline bool is_radial_kind(DatumKind k) {
    return k == DatumKind::radial_profile || k == DatumKind::ramp || k == DatumKind::bumps;
}

namespace datagen_detail {

inline double px(const DatumSpec& s, int i) { return s.cx + (i + 0.5 - 0.5 * s.width) * s.h; }
inline double py(const DatumSpec& s, int j) { return s.cy + (j + 0.5 - 0.5 * s.height) * s.h; }

inline bool in_two_squares(double x, double y) {
    return (x >= 0.0 && x <= 1.0 && y >= -1.0 && y <= 0.0) ||
           (x >= -1.0 && x <= 0.0 && y >= 0.0 && y <= 1.0);
}

// convex polygon membership: point on the inner side of every edge
inline bool in_convex_polygon(const std::vector<std::pair<double, double>>& v, double x,
                              double y) {
    const std::size_t m = v.size();
    int sign = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto [x1, y1] = v[i];
        const auto [x2, y2] = v[(i + 1) % m];
        const double cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1);
        if (cross == 0.0) continue;
        const int s = cross > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

inline void require_inside(const DatumSpec& s, double x, double y, const char* what) {
    const double hx = 0.5 * s.width * s.h, hy = 0.5 * s.height * s.h;
    if (x < s.cx - hx || x > s.cx + hx || y < s.cy - hy || y > s.cy + hy)
        throw GeometryOutOfDomain(std::string(what) + " extends outside the domain");
}

} // namespace datagen_detail

inline void add_noise(GridImage& g, double sigma, std::uint64_t seed) {
    if (sigma <= 0.0) return;
    CounterRng rng(seed);
    for (double& v : g.values) v += sigma * rng.next_gauss();
}

inline void add_noise(RadialProfile& p, double sigma, std::uint64_t seed) {
    if (sigma <= 0.0) return;
    CounterRng rng(seed);
    for (double& v : p.values) v += sigma * rng.next_gauss();
}

inline GridImage make_disc(const DatumSpec& s) {
    using namespace datagen_detail;
    require_inside(s, s.disc_cx - s.radius, s.disc_cy - s.radius, "disc");
    require_inside(s, s.disc_cx + s.radius, s.disc_cy + s.radius, "disc");
    GridImage g(s.width, s.height, s.h);
    const double r2 = s.radius * s.radius;
    for (int j = 0; j < s.height; ++j)
        for (int i = 0; i < s.width; ++i) {
            const double dx = px(s, i) - s.disc_cx, dy = py(s, j) - s.disc_cy;
            g(i, j) = (dx * dx + dy * dy <= r2) ? 1.0 : 0.0;
        }
    return g;
}

inline GridImage make_two_squares(const DatumSpec& s) {
    using namespace datagen_detail;
    require_inside(s, -1.0, -1.0, "two_squares");
    require_inside(s, 1.0, 1.0, "two_squares");
    GridImage g(s.width, s.height, s.h);
    for (int j = 0; j < s.height; ++j)
        for (int i = 0; i < s.width; ++i)
            g(i, j) = in_two_squares(px(s, i), py(s, j)) ? 1.0 : 0.0;
    return g;
}

inline GridImage make_convex_polygon(const DatumSpec& s) {
    using namespace datagen_detail;
    if (s.vertices.size() < 3) throw BadInput("convex_polygon: need at least 3 vertices");
    for (const auto& [x, y] : s.vertices) require_inside(s, x, y, "polygon");
    GridImage g(s.width, s.height, s.h);
    for (int j = 0; j < s.height; ++j)
        for (int i = 0; i < s.width; ++i)
            g(i, j) = in_convex_polygon(s.vertices, px(s, i), py(s, j)) ? 1.0 : 0.0;
    return g;
}

inline GridImage make_noise_field(const DatumSpec& s) {
    GridImage g(s.width, s.height, s.h, 0.0);
    add_noise(g, s.noise_sigma > 0.0 ? s.noise_sigma : 1.0, s.seed);
    return g;
}

inline RadialProfile make_radial_disc(const DatumSpec& s) {
    if (s.radius >= s.R) throw GeometryOutOfDomain("radial_profile: radius must be < R");
    RadialProfile p(s.R, s.n, s.dim);
    for (int i = 0; i < s.n; ++i) p.values[i] = p.r(i) < s.radius ? 1.0 : 0.0;
    return p;
}

inline RadialProfile make_ramp(const DatumSpec& s) {
    RadialProfile p(s.R, s.n, s.dim);
    for (int i = 0; i < s.n; ++i) p.values[i] = 1.0 - p.r(i) / s.R;
    return p;
}

inline RadialProfile make_bumps(const DatumSpec& s) {
    RadialProfile p(s.R, s.n, s.dim);
    const double c1 = 0.25 * s.R, c2 = 0.65 * s.R, w = 0.08 * s.R;
    for (int i = 0; i < s.n; ++i) {
        const double r = p.r(i);
        const double b1 = std::exp(-std::pow((r - c1) / w, 2));
        const double b2 = 0.8 * std::exp(-std::pow((r - c2) / w, 2));
        p.values[i] = b1 + b2;
    }
    return p;
}

inline Datum generate(const DatumSpec& s) {
    if (is_radial_kind(s.kind)) {
        RadialProfile p;
        switch (s.kind) {
        case DatumKind::radial_profile: p = make_radial_disc(s); break;
        case DatumKind::ramp: p = make_ramp(s); break;
        default: p = make_bumps(s); break;
        }
        add_noise(p, s.noise_sigma, s.seed);
        return p;
    }
    GridImage g;
    switch (s.kind) {
    case DatumKind::disc: g = make_disc(s); break;
    case DatumKind::two_squares: g = make_two_squares(s); break;
    case DatumKind::convex_polygon: g = make_convex_polygon(s); break;
    case DatumKind::noisy: return make_noise_field(s);
    default: throw BadInput("generate: unknown kind");
    }
    add_noise(g, s.noise_sigma, s.seed);
    return g;
}

inline DatumKind parse_datum_kind(const std::string& name) {
    if (name == "disc") return DatumKind::disc;
    if (name == "two_squares") return DatumKind::two_squares;
    if (name == "convex_polygon") return DatumKind::convex_polygon;
    if (name == "radial_profile") return DatumKind::radial_profile;
    if (name == "ramp") return DatumKind::ramp;
    if (name == "bumps") return DatumKind::bumps;
    if (name == "noisy") return DatumKind::noisy;
    throw BadInput("unknown datum kind: " + name);
}

inline const char* to_string(DatumKind k) {
    switch (k) {
    case DatumKind::disc: return "disc";
    case DatumKind::two_squares: return "two_squares";
    case DatumKind::convex_polygon: return "convex_polygon";
    case DatumKind::radial_profile: return "radial_profile";
    case DatumKind::ramp: return "ramp";
    case DatumKind::bumps: return "bumps";
    case DatumKind::noisy: return "noisy";
    }
    return "?";
}

} // namespace tvsc
