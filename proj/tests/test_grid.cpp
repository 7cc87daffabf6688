#include <catch2/catch_amalgamated.hpp>

#include "tvsc/datagen.hpp"
#include "tvsc/grid.hpp"
#include "tvsc/oracles.hpp"

using namespace tvsc;

namespace {

GridImage random_image(int w, int h, double spacing, std::uint64_t seed) {
    GridImage g(w, h, spacing);
    CounterRng rng(seed);
    for (double& v : g.values) v = rng.next_unit();
    return g;
}

DualField random_field(int w, int h, double spacing, std::uint64_t seed) {
    DualField p(w, h, spacing, std::numeric_limits<double>::infinity());
    CounterRng rng(seed);
    for (std::size_t i = 0; i < p.size(); ++i) {
        p.x[i] = rng.next_unit() - 0.5;
        p.y[i] = rng.next_unit() - 0.5;
    }
    return p;
}

} // namespace

TEST_CASE("gradient of a constant image vanishes") {
    GridImage g(7, 5, 0.25, 3.7);
    const DualField p = gradient(g);
    for (std::size_t i = 0; i < p.size(); ++i) {
        REQUIRE(p.x[i] == 0.0);
        REQUIRE(p.y[i] == 0.0);
    }
}

TEST_CASE("gradient of a 1x2 step is a single forward difference") {
    GridImage g(2, 1, 1.0);
    g(0, 0) = 0.0;
    g(1, 0) = 1.0;
    const DualField p = gradient(g);
    REQUIRE(p.x[0] == 1.0);
    REQUIRE(p.x[1] == 0.0); // Neumann closure
    REQUIRE(p.y[0] == 0.0);
    REQUIRE(p.y[1] == 0.0);
}

TEST_CASE("gradient and divergence are negative adjoints") {
    for (std::uint64_t seed : {11u, 22u, 33u, 44u}) {
        const GridImage u = random_image(13, 9, 0.3, seed);
        const DualField p = random_field(13, 9, 0.3, seed + 100);
        const DualField gu = gradient(u);
        // both pairings by direct summation
        double lhs = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) lhs += gu.x[i] * p.x[i] + gu.y[i] * p.y[i];
        const GridImage dp = divergence(p);
        for (std::size_t i = 0; i < u.size(); ++i) rhs += u.values[i] * dp.values[i];
        REQUIRE(std::abs(lhs + rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("divergence of the zero field is zero and fluxes balance") {
    DualField z(6, 4, 0.5, 1.0);
    const GridImage d = divergence(z);
    for (double v : d.values) REQUIRE(v == 0.0);

    // telescoping: sum of divergence vanishes for any field
    const DualField p = random_field(17, 12, 0.7, 5);
    const GridImage dp = divergence(p);
    REQUIRE(std::abs(dp.sum()) <= 1e-12 * p.size());
}

TEST_CASE("tv of a constant image is zero, and zero only for constants") {
    GridImage g(9, 9, 0.1, -2.0);
    REQUIRE(tv_iso(g) == 0.0);
    REQUIRE(tv_aniso(g) == 0.0);
    g(4, 4) += 1e-9;
    REQUIRE(tv_iso(g) > 0.0);
    REQUIRE(tv_aniso(g) > 0.0);
}

TEST_CASE("anisotropic tv of a k x k block counts boundary edges") {
    for (int k : {1, 3, 5}) {
        GridImage g(12, 12, 1.0, 0.0);
        for (int y = 3; y < 3 + k; ++y)
            for (int x = 4; x < 4 + k; ++x) g(x, y) = 1.0;
        REQUIRE(tv_aniso(g) == Catch::Approx(4.0 * k).epsilon(1e-14));
    }
}

TEST_CASE("discrete coarea identity is exact for integer images") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        GridImage g(16, 11, 0.37, 0.0);
        CounterRng rng(seed);
        for (double& v : g.values) v = static_cast<double>(rng.next_u64() % 6);
        const double lhs = tv_aniso(g);
        const double rhs = coarea_integral_integer(g);
        REQUIRE(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("norm equivalence between the two tv flavours") {
    for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
        const GridImage u = random_image(14, 10, 0.2, seed);
        const double ti = tv_iso(u), ta = tv_aniso(u);
        REQUIRE(ti <= ta * (1.0 + 1e-12));
        REQUIRE(ta <= std::sqrt(2.0) * ti * (1.0 + 1e-12));
    }
}

TEST_CASE("tv is 1-homogeneous and translation invariant") {
    const GridImage u = random_image(10, 10, 0.5, 42);
    for (double alpha : {-2.0, 0.5, 3.0}) {
        GridImage v = u;
        for (double& w : v.values) w *= alpha;
        REQUIRE(tv_iso(v) == Catch::Approx(std::abs(alpha) * tv_iso(u)).margin(1e-12));
        REQUIRE(tv_aniso(v) == Catch::Approx(std::abs(alpha) * tv_aniso(u)).margin(1e-12));
    }
    GridImage w = u;
    for (double& v : w.values) v += 17.5;
    REQUIRE(tv_iso(w) == Catch::Approx(tv_iso(u)).margin(1e-10));
    REQUIRE(tv_aniso(w) == Catch::Approx(tv_aniso(u)).margin(1e-10));
}

TEST_CASE("level-set perimeter is the boundary edge count times h") {
    GridImage g(10, 10, 0.25, 0.0);
    for (int y = 2; y < 6; ++y)
        for (int x = 3; x < 6; ++x) g(x, y) = 1.0;
    const LevelSet e = level_set(g, 0.5);
    // 3x4 block: 2*(3+4) = 14 edges
    REQUIRE(e.perimeter() == Catch::Approx(14 * 0.25).epsilon(1e-14));
    REQUIRE(e.area() == Catch::Approx(12 * 0.25 * 0.25).epsilon(1e-14));
}

TEST_CASE("invalid grids are rejected") {
    REQUIRE_THROWS_AS(GridImage(0, 3, 1.0), BadInput);
    REQUIRE_THROWS_AS(GridImage(3, 3, 0.0), BadInput);
    GridImage g(2, 2, 1.0);
    g(0, 0) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(validate(g), BadInput);
}
