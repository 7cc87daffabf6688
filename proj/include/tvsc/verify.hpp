#pragma once

// Named verification suites, one per acceptance criterion. Every tolerance
// and grid parameter is pinned here. The CLI `verify` subcommand and the
// acceptance test binary both run these; each suite returns one aggregate
// line per criterion plus its sub-checks.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "tvsc/datagen.hpp"
#include "tvsc/flow.hpp"
#include "tvsc/levelset.hpp"
#include "tvsc/oracles.hpp"
#include "tvsc/parallel.hpp"
#include "tvsc/radial.hpp"
#include "tvsc/rof.hpp"
#include "tvsc/staircase.hpp"

namespace tvsc::verify {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckLine> lines;
    double seconds = 0.0;

    bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

namespace detail {

inline std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

inline GridImage padded_disc_256() {
    DatumSpec s;
    s.kind = DatumKind::disc;
    s.width = s.height = 256;
    s.h = 16.0 / 256.0; // domain [-8,8]^2 emulating the plane
    return make_disc(s);
}

inline GridImage disc_256() {
    DatumSpec s;
    s.kind = DatumKind::disc;
    s.width = s.height = 256;
    s.h = 8.0 / 256.0; // domain [-4,4]^2
    return make_disc(s);
}

inline GridImage two_squares_grid(int n) {
    DatumSpec s;
    s.kind = DatumKind::two_squares;
    s.width = s.height = n;
    s.h = 4.0 / n; // domain [-2,2]^2
    return make_two_squares(s);
}

inline RadialProfile disc_profile(int n) {
    DatumSpec s;
    s.kind = DatumKind::radial_profile;
    s.R = 4.0;
    s.n = n;
    s.dim = 2;
    s.radius = 1.0;
    return make_radial_disc(s);
}

inline RadialProfile ramp_profile(int n) {
    DatumSpec s;
    s.kind = DatumKind::ramp;
    s.R = 4.0;
    s.n = n;
    s.dim = 2;
    return make_ramp(s);
}

inline RadialProfile piecewise_profile(int n, std::uint64_t seed) {
    RadialProfile p(4.0, n, 2);
    CounterRng rng(seed);
    int i = 0;
    while (i < n) {
        const int len = 1 + static_cast<int>(rng.next_u64() % (n / 6 + 1));
        const double v = rng.next_unit();
        for (int k = 0; k < len && i < n; ++k) p.values[i++] = v;
    }
    return p;
}

} // namespace detail

// 1. Disc closed form: padded 256^2 grid, lambda = 0.1, u within 0.02 of
//    0.8*chi_D away from a 3h band around r = 1; runtime <= 60 s.
inline SuiteResult disc_closed_form(int /*jobs*/) {
    using namespace detail;
    SuiteResult res{"disc-closed-form", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const GridImage g = padded_disc_256();
    SolverConfig cfg;
    cfg.lambda = 0.1;
    cfg.tol = 1e-6;
    const SolveResult r = solve_rof_cascade(g, cfg);
    double max_err = 0.0;
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) {
            const double px = (x + 0.5 - 128.0) * g.h, py = (y + 0.5 - 128.0) * g.h;
            const double rr = std::sqrt(px * px + py * py);
            if (std::abs(rr - 1.0) <= 3.0 * g.h) continue;
            const double want = rr < 1.0 ? 0.8 : 0.0;
            max_err = std::max(max_err, std::abs(r.u(x, y) - want));
        }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.lines.push_back({"u vs (1-2*0.1)+ chi_D, off 3h band", max_err <= 0.02,
                         fmt("max err %.4f <= 0.02", max_err)});
    res.lines.push_back({"runtime", res.seconds <= 60.0, fmt("%.1fs <= 60s", res.seconds)});
    return res;
}

// 2. Extinction thresholds: padded plane-like grid gives 0.5 +- 0.02, the
//    ball B(0,4) profile gives 15/32 +- 0.01; runtime <= 5 min. The padded
//    threshold runs at 512^2: the forward-difference TV perimeter bias
//    depresses the discrete threshold by ~ c*h, which at h = 1/16 (256^2)
//    already exceeds the stated window; h = 1/32 sits inside it. The 256^2
//    value is reported for reference.
inline SuiteResult extinction_threshold(int /*jobs*/) {
    using namespace detail;
    SuiteResult res{"extinction-threshold", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();

    SolverConfig proto;
    proto.tol = 1e-6;
    int solves2d = 0;
    DatumSpec ps;
    ps.kind = DatumKind::disc;
    ps.width = ps.height = 512;
    ps.h = 16.0 / 512.0;
    const double star2d =
        find_lambda_star(make_disc(ps), 0.0, 1.0, 4e-3, proto, &solves2d);
    res.lines.push_back({"plane-emulating disc lambda* (512^2)",
                         std::abs(star2d - 0.5) <= 0.02,
                         fmt("%.4f within 0.5 +- 0.02 (%d solves)", star2d, solves2d)});
    const double star256 = find_lambda_star(padded_disc_256(), 0.0, 1.0, 4e-3, proto);
    res.lines.push_back({"same at 256^2 (informational, h-bias ~ -0.02)", true,
                         fmt("%.4f", star256)});

    int solves_r = 0;
    const double star_r =
        find_lambda_star(disc_profile(8192), 0.0, 1.0, 1e-3, RadialSolverConfig{}, &solves_r);
    res.lines.push_back({"ball-domain disc lambda*", std::abs(star_r - 15.0 / 32.0) <= 0.01,
                         fmt("%.5f within 15/32 +- 0.01 (%d solves)", star_r, solves_r)});

    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.lines.push_back({"runtime", res.seconds <= 300.0, fmt("%.1fs <= 300s", res.seconds)});
    return res;
}

// 3. Level-set oracle exactness: 200 random (lambda, t) draws on random 4x4
//    grids match exhaustive enumeration; threshold consistency on the disc
//    and two-squares data for 9 levels each; runtime <= 2 min.
inline SuiteResult levelset_exactness(int jobs) {
    using namespace detail;
    SuiteResult res{"levelset-exactness", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();

    CounterRng rng(2024);
    int bad = 0;
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
        GridImage g(4, 4, 1.0);
        for (double& v : g.values) v = rng.next_unit();
        const double lambda = 0.02 + 0.5 * rng.next_unit();
        const double t = -0.2 + 1.4 * rng.next_unit();
        const CutSolution s = solve_cut({g, lambda, t});
        const EnumCutResult oracle = enumerate_cut(g, lambda, t);
        const double diff = std::abs(s.energy - oracle.energy);
        worst = std::max(worst, diff);
        if (diff > 1e-10) ++bad;
    }
    res.lines.push_back({"min-cut == enumeration on 200 draws", bad == 0,
                         fmt("%d mismatches, worst gap %.2e", bad, worst)});

    struct Case {
        const char* name;
        GridImage g;
        double lambda;
    };
    std::vector<Case> cases;
    cases.push_back({"disc", disc_256(), 0.1});
    cases.push_back({"two-squares (7/32)", two_squares_grid(256), 7.0 / 32.0});
    cases.push_back({"two-squares (11/64)", two_squares_grid(256), 11.0 / 64.0});
    for (const auto& c : cases) {
        SolverConfig cfg;
        cfg.lambda = c.lambda;
        cfg.tv_kind = TvKind::anisotropic;
        cfg.tol = 1e-8;
        const SolveResult r = solve_rof_cascade(c.g, cfg);
        std::vector<double> levels;
        for (int k = 1; k <= 9; ++k) levels.push_back(k / 10.0);
        std::vector<ThresholdLevelReport> reports(levels.size());
        parallel_for(static_cast<int>(levels.size()), jobs, [&](int i) {
            const ThresholdConsistencyReport one =
                threshold_consistency(c.g, c.lambda, {levels[i]}, r.u);
            reports[i] = one.levels.front();
        });
        bool ok = true;
        std::size_t worst_px = 0;
        for (const auto& lr : reports) {
            ok = ok && lr.inclusion_ok && lr.energy_ok;
            worst_px = std::max(worst_px, lr.below_min + lr.above_max);
        }
        res.lines.push_back({fmt("threshold consistency, %s", c.name), ok,
                             fmt("9 levels, worst stray pixels %zu", worst_px)});
    }

    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.lines.push_back({"runtime", res.seconds <= 120.0, fmt("%.1fs <= 120s", res.seconds)});
    return res;
}

// 4. Staircase bound: flat_area >= 2 (lambda/osc g)^2 (1 - 4h) on disc and
//    two-squares at lambda in {0.05, 0.15}; strict clipping throughout.
inline SuiteResult staircase_bound(int jobs) {
    using namespace detail;
    SuiteResult res{"staircase-bound", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();

    struct Case {
        std::string name;
        GridImage g;
        double lambda;
    };
    std::vector<Case> cases;
    for (double lam : {0.05, 0.15}) {
        cases.push_back({fmt("disc lambda=%.2f", lam), disc_256(), lam});
        cases.push_back({fmt("two-squares lambda=%.2f", lam), two_squares_grid(256), lam});
    }
    std::vector<CheckLine> lines(2 * cases.size());
    parallel_for(static_cast<int>(cases.size()), jobs, [&](int i) {
        const Case& c = cases[i];
        SolverConfig cfg;
        cfg.lambda = c.lambda;
        cfg.tol = 1e-6;
        const SolveResult r = solve_rof_cascade(c.g, cfg);
        AnalysisConfig ac;
        ac.clip_margin = 1e-6 * c.g.oscillation();
        const StaircaseReport rep = analyze(c.g, r.u, c.lambda, ac);
        const QuantBoundReport q = quantitative_bound_check(rep);
        lines[2 * i] = {fmt("flat-area bound, %s", c.name.c_str()), q.overall_ok,
                        fmt("flat %.3f >= %.5f", q.flat_area, q.bound)};
        lines[2 * i + 1] = {fmt("strict clipping, %s", c.name.c_str()), rep.strict_clipping,
                            fmt("min/max u (%.4f, %.4f) in (%.4f, %.4f)", rep.min_u, rep.m_u,
                                rep.min_g, rep.m_g)};
    });
    res.lines = std::move(lines);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// 5. Radial comparison and Lipschitz bounds across the lambda grid
//    {0.05..0.4} on 5 random radial data at n = 4096; runtime <= 1 min.
inline SuiteResult radial_comparison(int jobs) {
    using namespace detail;
    SuiteResult res{"radial-comparison", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> lambdas = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};

    double worst_cmp = -1.0, worst_lip = -1.0;
    std::mutex m;
    parallel_for(5, jobs, [&](int sd) {
        const RadialProfile g = piecewise_profile(4096, 101 + sd);
        std::vector<RadialSolveResult> sols(lambdas.size());
        for (std::size_t i = 0; i < lambdas.size(); ++i) {
            RadialSolverConfig cfg;
            cfg.lambda = lambdas[i];
            sols[i] = solve_radial_dual(g, cfg, i ? &sols[i - 1].z : nullptr);
        }
        double wc = 0.0, wl = 0.0;
        for (std::size_t a = 0; a < lambdas.size(); ++a)
            for (std::size_t b = a + 1; b < lambdas.size(); ++b) {
                double diff = 0.0;
                for (int k = 0; k <= g.n; ++k) {
                    wc = std::max(wc, (sols[b].z.values[k] - lambdas[b]) -
                                          (sols[a].z.values[k] - lambdas[a]));
                    diff = std::max(diff,
                                    std::abs(sols[a].z.values[k] - sols[b].z.values[k]));
                }
                wl = std::max(wl, diff - (lambdas[b] - lambdas[a]));
            }
        std::lock_guard<std::mutex> lock(m);
        worst_cmp = std::max(worst_cmp, wc);
        worst_lip = std::max(worst_lip, wl);
    });
    res.lines.push_back({"comparison z_lam - lam >= z_mu - mu", worst_cmp <= 1e-6,
                         fmt("worst violation %.2e <= 1e-6", worst_cmp)});
    res.lines.push_back({"Lipschitz |z_lam - z_mu| <= |lam - mu|", worst_lip <= 1e-6,
                         fmt("worst excess %.2e <= 1e-6", worst_lip)});
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.lines.push_back({"runtime", res.seconds <= 60.0, fmt("%.1fs <= 60s", res.seconds)});
    return res;
}

// 6. Radial semigroup and flow equivalence at n = 8192 on disc and ramp.
inline SuiteResult radial_semigroup(int /*jobs*/) {
    using namespace detail;
    SuiteResult res{"radial-semigroup", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const RadialProfile disc = disc_profile(8192);
    const RadialProfile ramp = ramp_profile(8192);

    const double sg_disc = semigroup_defect(disc, 0.05, 0.15);
    const double sg_ramp = semigroup_defect(ramp, 0.05, 0.15);
    res.lines.push_back({"semigroup defect, disc", sg_disc <= 1e-3,
                         fmt("T_.15 vs T_.10 o T_.05: %.2e <= 1e-3", sg_disc)});
    res.lines.push_back({"semigroup defect, ramp", sg_ramp <= 1e-3,
                         fmt("T_.15 vs T_.10 o T_.05: %.2e <= 1e-3", sg_ramp)});

    const double eq_disc = radial_equivalence_defect(disc, 0.1);
    const double eq_ramp = radial_equivalence_defect(ramp, 0.05);
    res.lines.push_back({"flow equivalence, disc t=0.1", eq_disc <= 1e-3,
                         fmt("||flow(64) - T_t||_2 = %.2e <= 1e-3", eq_disc)});
    res.lines.push_back({"flow equivalence, ramp t=0.05", eq_ramp <= 1e-3,
                         fmt("||flow(64) - T_t||_2 = %.2e <= 1e-3", eq_ramp)});
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// 7. Non-radial failure on the two-squares datum: the 64-substep flow
//    differs from the single resolvent by > 10x solver tolerance, and the
//    origin trace has curvature > 10x the affine control's floor.
inline SuiteResult nonradial_failure(int jobs) {
    using namespace detail;
    SuiteResult res{"nonradial-failure", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const GridImage g = two_squares_grid(256);
    SolverConfig proto;
    proto.tol = 1e-6;

    const double gap = flow_vs_resolvent_gap_inf(g, 0.15, proto, 64);
    const double tol_u = 10.0 * proto.tol * std::max(1.0, g.max_abs());
    res.lines.push_back({"flow(0.15, 64) vs T_0.15 gap", gap > tol_u,
                         fmt("%.4f > %.0e (10x solver tol)", gap, tol_u)});

    std::vector<double> ts;
    for (int k = 0; k < 12; ++k) ts.push_back(0.04 + 0.02 * k);
    const OriginTrace signal = origin_trace(g, ts, proto, jobs);
    const OriginTrace control = origin_trace(disc_256(), ts, proto, jobs);
    const double ratio = signal.max_curvature() / control.max_curvature();
    res.lines.push_back(
        {"origin-trace curvature vs affine control", ratio > 10.0,
         fmt("signal %.2f / control %.4f = %.1fx > 10x", signal.max_curvature(),
             control.max_curvature(), ratio)});
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// 8. Non-monotone staircase at 512^2 with (lambda1, lambda2) = (7/32, 11/64):
//    area(S_2 \ S_1) > 10 h^2 512; radial dual-slack sets nest.
inline SuiteResult staircase_nonmonotone(int jobs) {
    using namespace detail;
    SuiteResult res{"staircase-nonmonotone", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const GridImage g = two_squares_grid(512);
    SolverConfig proto;
    proto.tol = 1e-7;
    const NonmonotoneWitness w =
        staircase_nonmonotone_witness(g, 7.0 / 32.0, 11.0 / 64.0, proto);
    const double threshold = 10.0 * g.h * g.h * 512.0;
    res.lines.push_back(
        {"area(S_{11/64} \\ S_{7/32}) at 512^2", w.area_s2_minus_s1 > threshold,
         fmt("%.4f > %.4f (measured: non-inclusion present but thin; see notes)",
             w.area_s2_minus_s1, threshold)});

    bool nested = true;
    double worst = 0.0;
    std::mutex m;
    parallel_for(5, jobs, [&](int sd) {
        const RadialProfile p = piecewise_profile(2048, 101 + sd);
        const SlackChainReport rep =
            radial_slack_chain_check(p, {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4});
        std::lock_guard<std::mutex> lock(m);
        nested = nested && rep.ok;
        worst = std::max(worst, rep.max_slack_regression);
    });
    res.lines.push_back({"radial dual-slack sets nest", nested,
                         fmt("worst slack regression %.2e", worst)});
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// 9. Jump inclusion on the disc profile for (0.1, 0.3) and (0.1, 0.48).
inline SuiteResult jump_inclusion(int /*jobs*/) {
    using namespace detail;
    SuiteResult res{"jump-inclusion", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    const RadialProfile g = disc_profile(8192);

    JumpInclusionReport rep = jump_inclusion_check(g, 0.1, 0.3);
    res.lines.push_back(
        {"J_{u_0.3} in J_{u_0.1} in J_g", rep.hi_in_lo && rep.lo_in_g,
         fmt("jumps: g %zu, u_0.1 %zu, u_0.3 %zu, all within one cell", rep.jumps_g.size(),
             rep.jumps_lo.size(), rep.jumps_hi.size())});

    rep = jump_inclusion_check(g, 0.1, 0.48);
    res.lines.push_back({"J_{u_0.48} empty above lambda*",
                         rep.jumps_hi.empty() && rep.hi_in_lo && rep.lo_in_g,
                         fmt("jumps at mu=0.48: %zu", rep.jumps_hi.size())});
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

// 10. Oracle equivalences: taut string (N=1), dual-gradient finite
//     differences, discrete coarea identity.
inline SuiteResult oracle_equivalence(int jobs) {
    using namespace detail;
    SuiteResult res{"oracle-equivalence", {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();

    double worst_ts = 0.0;
    std::mutex m;
    parallel_for(50, jobs, [&](int sd) {
        CounterRng rng(7000 + sd);
        RadialProfile g(1.0, 512, 1);
        int i = 0;
        while (i < 512) {
            const int len = 1 + static_cast<int>(rng.next_u64() % 64);
            const double v = rng.next_unit();
            for (int k = 0; k < len && i < 512; ++k) g.values[i++] = v;
        }
        RadialSolverConfig cfg;
        cfg.lambda = 0.005 + 0.245 * rng.next_unit();
        const RadialSolveResult r = solve_radial_dual(g, cfg);
        const std::vector<double> ts = taut_string_rof_1d(g.values, g.dr(), cfg.lambda);
        double w = 0.0;
        for (int k = 0; k < 512; ++k) w = std::max(w, std::abs(r.u.values[k] - ts[k]));
        std::lock_guard<std::mutex> lock(m);
        worst_ts = std::max(worst_ts, w);
    });
    res.lines.push_back({"N=1 solver vs taut string, 50 signals", worst_ts <= 1e-8,
                         fmt("worst gap %.2e <= 1e-8", worst_ts)});

    CounterRng rng(31415);
    double worst_grad = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 48;
        const int dim = 1 + static_cast<int>(rng.next_u64() % 3);
        RadialProfile g(2.0, n, dim);
        for (double& v : g.values) v = rng.next_unit();
        const double lambda = 0.05 + 0.3 * rng.next_unit();
        std::vector<double> z(n + 1, 0.0);
        for (int k = 1; k < n; ++k) z[k] = lambda * (2.0 * rng.next_unit() - 1.0);
        const auto analytic = radial_dual_gradient(g, z);
        const auto fd = radial_dual_gradient_fd(g, z);
        double scale = 1.0;
        for (double v : analytic) scale = std::max(scale, std::abs(v));
        for (int k = 1; k < n; ++k)
            worst_grad = std::max(worst_grad, std::abs(analytic[k] - fd[k]) / scale);
    }
    res.lines.push_back({"dual gradient vs central differences, 100 points",
                         worst_grad <= 1e-6, fmt("worst rel err %.2e <= 1e-6", worst_grad)});

    double worst_coarea = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        GridImage img(16, 12, 0.37, 0.0);
        CounterRng r2(500 + trial);
        for (double& v : img.values) v = static_cast<double>(r2.next_u64() % 6);
        const double lhs = tv_aniso(img);
        const double rhs = coarea_integral_integer(img);
        worst_coarea = std::max(worst_coarea, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }
    res.lines.push_back({"discrete coarea identity on integer images", worst_coarea <= 1e-10,
                         fmt("worst rel gap %.2e <= 1e-10", worst_coarea)});
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "disc-closed-form",   "extinction-threshold", "levelset-exactness",
        "staircase-bound",    "radial-comparison",    "radial-semigroup",
        "nonradial-failure",  "staircase-nonmonotone", "jump-inclusion",
        "oracle-equivalence"};
    return names;
}

inline SuiteResult run_suite(const std::string& name, int jobs) {
    if (name == "disc-closed-form") return disc_closed_form(jobs);
    if (name == "extinction-threshold") return extinction_threshold(jobs);
    if (name == "levelset-exactness") return levelset_exactness(jobs);
    if (name == "staircase-bound") return staircase_bound(jobs);
    if (name == "radial-comparison") return radial_comparison(jobs);
    if (name == "radial-semigroup") return radial_semigroup(jobs);
    if (name == "nonradial-failure") return nonradial_failure(jobs);
    if (name == "staircase-nonmonotone") return staircase_nonmonotone(jobs);
    if (name == "jump-inclusion") return jump_inclusion(jobs);
    if (name == "oracle-equivalence") return oracle_equivalence(jobs);
    throw BadInput("unknown verification suite: " + name);
}

inline int print_suite(const SuiteResult& res, std::FILE* out = stdout) {
    const bool ok = res.all_pass();
    std::fprintf(out, "[%s] %s (%.1fs)\n", ok ? "PASS" : "FAIL", res.suite.c_str(),
                 res.seconds);
    for (const auto& l : res.lines)
        std::fprintf(out, "    [%s] %s: %s\n", l.pass ? "ok" : "FAIL", l.name.c_str(),
                     l.detail.c_str());
    return ok ? 0 : 1;
}

} // namespace tvsc::verify
