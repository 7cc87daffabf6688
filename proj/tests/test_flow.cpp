#include <catch2/catch_amalgamated.hpp>

#include "tvsc/datagen.hpp"
#include "tvsc/flow.hpp"
#include "tvsc/oracles.hpp"

using namespace tvsc;

namespace {

GridImage two_squares_grid(int n, double half_extent = 2.0) {
    DatumSpec s;
    s.kind = DatumKind::two_squares;
    s.width = s.height = n;
    s.h = 2.0 * half_extent / n;
    return make_two_squares(s);
}

RadialProfile disc_profile(int n) {
    DatumSpec s;
    s.kind = DatumKind::radial_profile;
    s.R = 4.0;
    s.n = n;
    s.dim = 2;
    s.radius = 1.0;
    return make_radial_disc(s);
}

} // namespace

TEST_CASE("zero time returns the datum exactly") {
    const GridImage g = two_squares_grid(32);
    REQUIRE(dist_inf(flow(g, 0.0, 4), g) == 0.0);
    const RadialProfile p = disc_profile(128);
    REQUIRE(dist_inf(flow(p, 0.0, 4), p) == 0.0);
}

TEST_CASE("radial flow is independent of the substep count") {
    const RadialProfile g = disc_profile(2048);
    const double t = 0.15;
    const RadialProfile u1 = flow(g, t, 1);
    for (int n : {2, 4, 8}) {
        const RadialProfile un = flow(g, t, n);
        REQUIRE(dist_inf(un, u1) <= 1e-6);
    }
    // inside value from the closed form
    const DiscBallSolution ref = disc_ball_solution(t, 4.0);
    REQUIRE(std::abs(u1.values[10] - ref.inside) <= 1e-3);
    REQUIRE(ref.inside == Catch::Approx(0.7));
}

TEST_CASE("radial flow equivalence defect is at solver-noise level") {
    const RadialProfile g = disc_profile(1024);
    REQUIRE(radial_equivalence_defect(g, 0.1) <= 1e-3);

    DatumSpec rs;
    rs.kind = DatumKind::ramp;
    rs.R = 4.0;
    rs.n = 1024;
    rs.dim = 2;
    const RadialProfile ramp = make_ramp(rs);
    REQUIRE(radial_equivalence_defect(ramp, 0.05) <= 1e-3);
}

TEST_CASE("non-radial data separate the flow from the single resolvent") {
    const GridImage g = two_squares_grid(64);
    SolverConfig proto;
    proto.tol = 1e-7;
    const double gap = flow_vs_resolvent_gap_inf(g, 0.15, proto, 16);
    REQUIRE(gap > 10.0 * proto.tol);
    REQUIRE(gap > 0.01); // macroscopic, not borderline
}

TEST_CASE("flow trajectories decrease tv and conserve the mean") {
    const GridImage g = two_squares_grid(48);
    SolverConfig proto;
    proto.tol = 1e-7;
    GridImage prev = g;
    double prev_tv = tv_iso(prev);
    for (int k = 1; k <= 4; ++k) {
        const GridImage uk = flow(g, 0.03 * k, 4, proto);
        REQUIRE(tv_iso(uk) <= prev_tv + 1e-6);
        REQUIRE(std::abs(uk.sum() - g.sum()) <= 1e-8 * std::abs(g.sum()));
        prev_tv = tv_iso(uk);
    }
}

TEST_CASE("doubling study defects shrink for non-radial data") {
    const GridImage g = two_squares_grid(48);
    SolverConfig proto;
    proto.tol = 1e-7;
    const FlowStudy<GridImage> study = flow_study(g, 0.12, 8, proto);
    REQUIRE(study.substeps == std::vector<int>{1, 2, 4, 8});
    REQUIRE(study.defects.size() == 3);
    REQUIRE(study.defects[1] < study.defects[0]);
    REQUIRE(study.defects[2] < study.defects[1]);
}

TEST_CASE("flow reaches the mean in finite time") {
    const GridImage g = two_squares_grid(48);
    SolverConfig proto;
    proto.tol = 1e-7;
    const GridImage late = flow(g, 0.4, 8, proto);
    REQUIRE(late.oscillation() <= 1e-3);
    REQUIRE(std::abs(late.mean() - g.mean()) <= 1e-6);
}

TEST_CASE("origin trace conventions and the affine control") {
    const DatumSpec ds = [] {
        DatumSpec s;
        s.kind = DatumKind::disc;
        s.width = s.height = 64;
        s.h = 8.0 / 64.0;
        return s;
    }();
    const GridImage disc = make_disc(ds);
    SolverConfig proto;
    proto.tol = 1e-8;
    std::vector<double> ts;
    for (int k = 0; k <= 6; ++k) ts.push_back(0.08 + 0.02 * k);
    const OriginTrace tr = origin_trace(disc, ts, proto, 2);
    REQUIRE(tr.values.size() == ts.size());
    REQUIRE(tr.second_differences.size() == ts.size() - 2);
    // u(0) = 1 - 2t inside the disc: affine up to an O(h) discretization bias
    for (std::size_t i = 0; i < ts.size(); ++i)
        REQUIRE(std::abs(tr.values[i] - (1.0 - 2.0 * ts[i])) <= 2e-2);
    REQUIRE(tr.max_curvature() <= 1.0);

    // t = 0 uses the four-pixel corner mean of the datum itself
    std::vector<double> with_zero = {0.0, 0.02, 0.04};
    const OriginTrace tz = origin_trace(disc, with_zero, proto);
    REQUIRE(tz.values[0] == centre_corner_mean(disc));
    REQUIRE(tz.values[0] == 1.0);

    REQUIRE_THROWS_AS(origin_trace(disc, {0.0, 0.01}, proto), BadInput);
    REQUIRE_THROWS_AS(origin_trace(disc, {0.0, 0.01, 0.03}, proto), BadInput);
}
