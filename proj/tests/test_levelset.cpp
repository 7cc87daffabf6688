#include <catch2/catch_amalgamated.hpp>

#include "tvsc/datagen.hpp"
#include "tvsc/levelset.hpp"
#include "tvsc/oracles.hpp"

using namespace tvsc;

namespace {

GridImage random_grid(int w, int h, double spacing, std::uint64_t seed) {
    GridImage g(w, h, spacing);
    CounterRng rng(seed);
    for (double& v : g.values) v = rng.next_unit();
    return g;
}

} // namespace

TEST_CASE("levels above the datum maximum give the empty set at zero energy") {
    const GridImage g = random_grid(6, 6, 0.5, 3);
    const CutSolution s = solve_cut({g, 0.2, g.max_value() + 0.1});
    REQUIRE(s.minimal.empty());
    REQUIRE(s.maximal.empty());
    REQUIRE(s.energy == 0.0);
}

TEST_CASE("interior block indicator with small lambda recovers the block exactly") {
    // 2x2 block strictly inside a 4x5 grid: 4k = 8 boundary edges by hand
    GridImage g(4, 5, 1.0, 0.0);
    for (int y = 1; y < 3; ++y)
        for (int x = 1; x < 3; ++x) g(x, y) = 1.0;
    const double lambda = 0.1;
    const CutSolution s = solve_cut({g, lambda, 0.5});
    REQUIRE(s.energy == Catch::Approx(8.0 * lambda - 0.5 * 4.0).margin(1e-12));
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 4; ++x) {
            const bool in_block = y >= 1 && y < 3 && x >= 1 && x < 3;
            REQUIRE(s.minimal.mask[s.minimal.idx(x, y)] == (in_block ? 1 : 0));
            REQUIRE(s.maximal.mask[s.maximal.idx(x, y)] == (in_block ? 1 : 0));
        }
    const EnumCutResult oracle = enumerate_cut(g, lambda, 0.5);
    REQUIRE(std::abs(s.energy - oracle.energy) <= 1e-12);
}

TEST_CASE("min-cut energy equals exhaustive enumeration on random 4x4 grids") {
    CounterRng rng(99);
    for (int draw = 0; draw < 25; ++draw) {
        GridImage g(4, 4, 1.0);
        for (double& v : g.values) v = rng.next_unit();
        const double lambda = 0.02 + 0.5 * rng.next_unit();
        const double t = -0.2 + 1.4 * rng.next_unit();
        const CutSolution s = solve_cut({g, lambda, t});
        const EnumCutResult oracle = enumerate_cut(g, lambda, t);
        REQUIRE(std::abs(s.energy - oracle.energy) <= 1e-10);
        REQUIRE(s.minimal.subset_of(s.maximal));
        // both extremal solutions achieve the optimum
        REQUIRE(std::abs(cut_energy(g, lambda, t, s.maximal.mask) - oracle.energy) <= 1e-10);
        // and bracket every optimal mask found by enumeration
        for (std::size_t i = 0; i < g.size(); ++i) {
            REQUIRE((s.minimal.mask[i] == oracle.minimal[i]));
            REQUIRE((s.maximal.mask[i] == oracle.maximal[i]));
        }
    }
}

TEST_CASE("degenerate ties produce distinct minimal and maximal solutions") {
    // lone bright pixels whose inclusion is exactly energy-neutral
    GridImage g(5, 1, 1.0, 0.0);
    g(1, 0) = 1.0;
    g(3, 0) = 1.0;
    const double lambda = 0.25, t = 0.5; // 2*lambda + (t-1) = 0 exactly
    const CutSolution s = solve_cut({g, lambda, t});
    const EnumCutResult oracle = enumerate_cut(g, lambda, t);
    REQUIRE(oracle.optima > 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        REQUIRE((s.minimal.mask[i] == oracle.minimal[i]));
        REQUIRE((s.maximal.mask[i] == oracle.maximal[i]));
    }
    REQUIRE(std::abs(cut_energy(g, lambda, t, s.minimal.mask) -
                     cut_energy(g, lambda, t, s.maximal.mask)) <= 1e-12);
}

TEST_CASE("random masks never beat the min cut on a 5x5 grid") {
    const GridImage g = random_grid(5, 5, 0.3, 17);
    const double lambda = 0.15, t = 0.45;
    const CutSolution s = solve_cut({g, lambda, t});
    CounterRng rng(18);
    std::vector<std::uint8_t> mask(g.size());
    for (int trial = 0; trial < 100000; ++trial) {
        const std::uint64_t bits = rng.next_u64();
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = (bits >> i) & 1u;
        REQUIRE(cut_energy(g, lambda, t, mask) >= s.energy - 1e-9);
    }
}

TEST_CASE("thresholded anisotropic minimizers agree with per-level cuts") {
    DatumSpec spec;
    spec.kind = DatumKind::disc;
    spec.width = spec.height = 64;
    spec.h = 8.0 / 64.0;
    const GridImage g = make_disc(spec);
    SolverConfig cfg;
    cfg.lambda = 0.1;
    cfg.tv_kind = TvKind::anisotropic;
    cfg.tol = 1e-8;
    const SolveResult r = solve_rof(g, cfg);
    const ThresholdConsistencyReport rep =
        threshold_consistency(g, cfg.lambda, {0.2, 0.5, 0.7}, r.u);
    for (const auto& lr : rep.levels) {
        INFO("level " << lr.level << " below_min=" << lr.below_min
                      << " above_max=" << lr.above_max << " cut=" << lr.cut_energy
                      << " thresh=" << lr.thresh_energy);
        REQUIRE(lr.inclusion_ok);
        REQUIRE(lr.energy_ok);
    }
    REQUIRE(rep.all_ok);
}

TEST_CASE("constant datum below its level fills the domain on both sides") {
    const GridImage g(6, 4, 0.5, 2.0);
    SolverConfig cfg;
    cfg.lambda = 0.3;
    cfg.tv_kind = TvKind::anisotropic;
    const SolveResult r = solve_rof(g, cfg);
    const ThresholdConsistencyReport rep = threshold_consistency(g, cfg.lambda, {1.5}, r.u);
    REQUIRE(rep.all_ok);
    const CutSolution s = solve_cut({g, cfg.lambda, 1.5});
    REQUIRE(s.minimal.count() == g.size());
    REQUIRE(s.maximal.count() == g.size());
}

TEST_CASE("superlevels are nested across levels") {
    DatumSpec spec;
    spec.kind = DatumKind::disc;
    spec.width = spec.height = 32;
    spec.h = 8.0 / 32.0;
    const GridImage disc = make_disc(spec);
    REQUIRE(monotone_levels(disc, 0.1, 0.3, 0.6));

    const GridImage g = random_grid(8, 8, 1.0, 23);
    const double levels[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
    for (int a = 0; a < 5; ++a)
        for (int b = a; b < 5; ++b) REQUIRE(monotone_levels(g, 0.2, levels[a], levels[b]));
}

TEST_CASE("optimal sets satisfy the discrete isoperimetric inequality") {
    DatumSpec spec;
    spec.kind = DatumKind::disc;
    spec.width = spec.height = 48;
    spec.h = 8.0 / 48.0;
    const GridImage disc = make_disc(spec);
    const CutSolution s = solve_cut({disc, 0.1, 0.5});
    REQUIRE_FALSE(s.minimal.empty());
    REQUIRE(isoperimetric_ok(s.minimal));

    CounterRng rng(5);
    for (int draw = 0; draw < 5; ++draw) {
        GridImage g(4, 4, 0.25);
        for (double& v : g.values) v = rng.next_unit();
        const CutSolution c = solve_cut({g, 0.05, 0.4});
        REQUIRE(isoperimetric_ok(c.minimal));
        REQUIRE(isoperimetric_ok(c.maximal));
    }
}

TEST_CASE("nonempty optimal sets respect the vanishing-level area bound") {
    DatumSpec spec;
    spec.kind = DatumKind::disc;
    spec.width = spec.height = 48;
    spec.h = 8.0 / 48.0;
    const GridImage disc = make_disc(spec);
    const double lambda = 0.1;
    const double m_g = disc.max_value();
    for (double t : {0.2, 0.5}) {
        const CutSolution s = solve_cut({disc, lambda, t});
        REQUIRE_FALSE(s.minimal.empty());
        const double bound =
            std::pow(lambda / (m_g - t), 2) * (1.0 - 4.0 * disc.h);
        REQUIRE(s.minimal.area() >= bound);
    }
    // near the top the anisotropic optimal set vanishes: the bound is vacuous
    const CutSolution top = solve_cut({disc, lambda, 0.8});
    REQUIRE(top.minimal.empty());
}

TEST_CASE("cut problem validation") {
    GridImage g(4, 4, 1.0, 0.0);
    REQUIRE_THROWS_AS(solve_cut({g, -0.1, 0.5}), BadInput);
}
