#include <catch2/catch_amalgamated.hpp>

#include "tvsc/datagen.hpp"

using namespace tvsc;

TEST_CASE("rasterized disc mass converges to the analytic area") {
    for (int n : {64, 128, 256}) {
        DatumSpec s;
        s.kind = DatumKind::disc;
        s.width = s.height = n;
        s.h = 8.0 / n;
        const GridImage g = make_disc(s);
        const double mass = g.sum() * g.h * g.h;
        REQUIRE(std::abs(mass - M_PI) <= 2.0 * M_PI * g.h);
    }
}

TEST_CASE("two-squares mass is two up to rasterization error") {
    DatumSpec s;
    s.kind = DatumKind::two_squares;
    s.width = s.height = 256;
    s.h = 4.0 / 256.0;
    const GridImage g = make_two_squares(s);
    REQUIRE(std::abs(g.sum() * g.h * g.h - 2.0) <= 8.0 * s.h);
    // touching point at the centre, squares in quadrants 2 and 4
    REQUIRE(g(128 + 10, 128 - 10) == 1.0);
    REQUIRE(g(128 - 10, 128 + 10) == 1.0);
    REQUIRE(g(128 + 10, 128 + 10) == 0.0);
    REQUIRE(g(128 - 10, 128 - 10) == 0.0);
}

TEST_CASE("polygon rasterization and validation") {
    DatumSpec s;
    s.kind = DatumKind::convex_polygon;
    s.width = s.height = 128;
    s.h = 4.0 / 128.0;
    s.vertices = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
    const GridImage g = make_convex_polygon(s);
    REQUIRE(std::abs(g.sum() * g.h * g.h - 1.0) <= 8.0 * s.h);

    s.vertices = {{-0.5, -0.5}, {9.0, 0.0}, {0.0, 0.5}};
    REQUIRE_THROWS_AS(make_convex_polygon(s), GeometryOutOfDomain);
}

TEST_CASE("geometry must fit the domain") {
    DatumSpec s;
    s.kind = DatumKind::disc;
    s.width = s.height = 64;
    s.h = 1.0 / 64.0; // domain [-1/2,1/2]^2 cannot hold the unit disc
    REQUIRE_THROWS_AS(make_disc(s), GeometryOutOfDomain);

    s.kind = DatumKind::radial_profile;
    s.R = 0.5;
    REQUIRE_THROWS_AS(make_radial_disc(s), GeometryOutOfDomain);
}

TEST_CASE("radial kinds have the advertised shape") {
    DatumSpec s;
    s.kind = DatumKind::ramp;
    s.R = 4.0;
    s.n = 256;
    s.dim = 2;
    const RadialProfile ramp = make_ramp(s);
    for (int i = 1; i < ramp.n; ++i) REQUIRE(ramp.values[i] < ramp.values[i - 1]);

    s.kind = DatumKind::bumps;
    const RadialProfile bumps = make_bumps(s);
    int maxima = 0;
    for (int i = 1; i + 1 < bumps.n; ++i)
        if (bumps.values[i] > bumps.values[i - 1] && bumps.values[i] > bumps.values[i + 1])
            ++maxima;
    REQUIRE(maxima == 2);

    s.kind = DatumKind::radial_profile;
    s.radius = 1.0;
    const RadialProfile disc = make_radial_disc(s);
    for (int i = 0; i < disc.n; ++i)
        REQUIRE(disc.values[i] == (disc.r(i) < 1.0 ? 1.0 : 0.0));
}

TEST_CASE("same seed, same bytes") {
    DatumSpec s;
    s.kind = DatumKind::noisy;
    s.width = s.height = 32;
    s.h = 1.0 / 32.0;
    s.noise_sigma = 0.5;
    s.seed = 424242;
    const GridImage a = std::get<GridImage>(generate(s));
    const GridImage b = std::get<GridImage>(generate(s));
    REQUIRE(std::memcmp(a.values.data(), b.values.data(),
                        a.values.size() * sizeof(double)) == 0);
    s.seed = 424243;
    const GridImage c = std::get<GridImage>(generate(s));
    REQUIRE(std::memcmp(a.values.data(), c.values.data(),
                        a.values.size() * sizeof(double)) != 0);
}

TEST_CASE("counter rng produces plausible gaussians") {
    CounterRng rng(9);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_gauss();
        sum += x;
        sum2 += x * x;
    }
    REQUIRE(std::abs(sum / n) <= 0.03);
    REQUIRE(std::abs(sum2 / n - 1.0) <= 0.05);
}

TEST_CASE("kind names round-trip") {
    for (const char* name : {"disc", "two_squares", "convex_polygon", "radial_profile",
                             "ramp", "bumps", "noisy"})
        REQUIRE(std::string(to_string(parse_datum_kind(name))) == name);
    REQUIRE_THROWS_AS(parse_datum_kind("sphere"), BadInput);
}
