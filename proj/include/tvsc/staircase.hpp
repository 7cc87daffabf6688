#pragma once

// Flat-zone and jump-set analysis of minimizers: detection of staircase
// zones, the quantitative lower bound on their measure, extinction
// thresholds, the Cheeger probe for convex indicator data, monotonicity of
// staircase sets across lambda (including the two-squares counterexample),
// and jump-set inclusion on radial profiles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "tvsc/errors.hpp"
#include "tvsc/grid.hpp"
#include "tvsc/radial.hpp"
#include "tvsc/rof.hpp"

namespace tvsc {

struct AnalysisConfig {
    double flat_tol = -1.0;  // gradient-magnitude threshold; auto = 1e-4 * osc(g) / h
    double jump_tol = -1.0;  // value-gap threshold; auto = 0.05 * osc(g)
    double clip_margin = 0.0;

    double resolved_flat_tol(double osc, double h) const {
        return flat_tol > 0.0 ? flat_tol : 1e-4 * (osc > 0.0 ? osc : 1.0) / h;
    }
    double resolved_jump_tol(double osc) const {
        return jump_tol > 0.0 ? jump_tol : 0.05 * (osc > 0.0 ? osc : 1.0);
    }
};

struct FlatZone {
    std::vector<int> cells;
    double area = 0.0;
    double level = 0.0; // mean value over the zone
};

struct GridJumpEdge {
    int x = 0, y = 0;
    bool horizontal = false; // edge between (x,y) and (x+1,y) if true, else (x,y)-(x,y+1)
    double magnitude = 0.0;
};

struct StaircaseReport {
    std::vector<FlatZone> flat_zones;
    std::vector<int> zone_of;       // per cell, -1 if not flat
    double flat_area = 0.0;
    double m_g = 0.0, min_g = 0.0;  // sup/inf of the datum
    double m_u = 0.0, min_u = 0.0;  // sup/inf of the minimizer
    double bound_value = 0.0;       // 2 (lambda / (m_g - min_g))^N
    double max_level_area = 0.0;    // |{u >= m_u - band}|
    double min_level_area = 0.0;    // |{u <= min_u + band}|
    double lambda = 0.0;
    int dim = 2;
    double spacing = 1.0;           // h or dr
    double flat_tol = 0.0, jump_tol = 0.0, level_band = 0.0;
    bool datum_constant = false;
    bool max_zone_positive = false;
    bool strict_clipping = false;
    std::vector<GridJumpEdge> grid_jumps;  // 2-D only
    std::vector<double> jump_radii;        // radial only
    std::vector<double> jump_magnitudes;   // radial only
};

namespace stair_detail {

inline std::vector<std::uint8_t> flat_pixels(const GridImage& u, double flat_tol) {
    std::vector<std::uint8_t> flat(u.size(), 0);
    const double inv_h = 1.0 / u.h;
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            const std::size_t i = u.idx(x, y);
            const double dx = (x + 1 < u.width) ? (u.values[i + 1] - u.values[i]) * inv_h : 0.0;
            const double dy =
                (y + 1 < u.height) ? (u.values[i + u.width] - u.values[i]) * inv_h : 0.0;
            flat[i] = std::sqrt(dx * dx + dy * dy) <= flat_tol ? 1 : 0;
        }
    return flat;
}

// 4-connected components of flat pixels.
inline void grid_zones(const GridImage& u, const std::vector<std::uint8_t>& flat,
                       StaircaseReport& rep) {
    rep.zone_of.assign(u.size(), -1);
    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            const int start = static_cast<int>(u.idx(x, y));
            if (!flat[start] || rep.zone_of[start] >= 0) continue;
            FlatZone zone;
            std::queue<int> q;
            q.push(start);
            rep.zone_of[start] = static_cast<int>(rep.flat_zones.size());
            double level_sum = 0.0;
            while (!q.empty()) {
                const int i = q.front();
                q.pop();
                zone.cells.push_back(i);
                level_sum += u.values[i];
                const int cx = i % u.width, cy = i / u.width;
                const int nb[4] = {cx > 0 ? i - 1 : -1, cx + 1 < u.width ? i + 1 : -1,
                                   cy > 0 ? i - u.width : -1,
                                   cy + 1 < u.height ? i + u.width : -1};
                for (int j : nb)
                    if (j >= 0 && flat[j] && rep.zone_of[j] < 0) {
                        rep.zone_of[j] = rep.zone_of[start];
                        q.push(j);
                    }
            }
            zone.area = static_cast<double>(zone.cells.size()) * u.h * u.h;
            zone.level = level_sum / static_cast<double>(zone.cells.size());
            rep.flat_area += zone.area;
            rep.flat_zones.push_back(std::move(zone));
        }
}

} // namespace stair_detail

inline StaircaseReport analyze(const GridImage& g, const GridImage& u, double lambda,
                               const AnalysisConfig& cfg = {}) {
    StaircaseReport rep;
    rep.lambda = lambda;
    rep.dim = 2;
    rep.spacing = u.h;
    const double osc = g.oscillation();
    rep.flat_tol = cfg.resolved_flat_tol(osc, u.h);
    rep.jump_tol = cfg.resolved_jump_tol(osc);
    rep.level_band = rep.flat_tol * u.h;
    rep.m_g = g.max_value();
    rep.min_g = g.min_value();
    rep.m_u = u.max_value();
    rep.min_u = u.min_value();
    rep.datum_constant = osc == 0.0;
    rep.bound_value = osc > 0.0 ? 2.0 * std::pow(lambda / osc, 2) : 0.0;

    const auto flat = stair_detail::flat_pixels(u, rep.flat_tol);
    stair_detail::grid_zones(u, flat, rep);

    std::size_t top = 0, bot = 0;
    for (double v : u.values) {
        if (v >= rep.m_u - rep.level_band) ++top;
        if (v <= rep.min_u + rep.level_band) ++bot;
    }
    rep.max_level_area = static_cast<double>(top) * u.h * u.h;
    rep.min_level_area = static_cast<double>(bot) * u.h * u.h;
    rep.max_zone_positive = top > 0;
    rep.strict_clipping = rep.datum_constant ||
                          (rep.min_u > rep.min_g + cfg.clip_margin &&
                           rep.m_u < rep.m_g - cfg.clip_margin && rep.min_u <= rep.m_u);

    for (int y = 0; y < u.height; ++y)
        for (int x = 0; x < u.width; ++x) {
            const std::size_t i = u.idx(x, y);
            if (x + 1 < u.width) {
                const double d = std::abs(u.values[i + 1] - u.values[i]);
                if (d > rep.jump_tol) rep.grid_jumps.push_back({x, y, true, d});
            }
            if (y + 1 < u.height) {
                const double d = std::abs(u.values[i + u.width] - u.values[i]);
                if (d > rep.jump_tol) rep.grid_jumps.push_back({x, y, false, d});
            }
        }
    return rep;
}

// Radial variant: flat faces are |du|/dr <= flat_tol, zones are maximal runs
// of cells whose internal faces are all flat, areas carry the r^{N-1} weight.
inline StaircaseReport analyze(const RadialProfile& g, const RadialProfile& u, double lambda,
                               const AnalysisConfig& cfg = {}) {
    StaircaseReport rep;
    rep.lambda = lambda;
    rep.dim = u.dim;
    rep.spacing = u.dr();
    const double osc = g.oscillation();
    rep.flat_tol = cfg.resolved_flat_tol(osc, u.dr());
    rep.jump_tol = cfg.resolved_jump_tol(osc);
    rep.level_band = rep.flat_tol * u.dr();
    rep.m_g = g.max_value();
    rep.min_g = g.min_value();
    rep.m_u = u.max_value();
    rep.min_u = u.min_value();
    rep.datum_constant = osc == 0.0;
    rep.bound_value = osc > 0.0 ? 2.0 * std::pow(lambda / osc, u.dim) : 0.0;

    const double dr = u.dr();
    const double sigma = sphere_measure(u.dim);
    std::vector<std::uint8_t> face_flat(u.n + 1, 1); // boundary faces count as flat
    for (int k = 1; k < u.n; ++k)
        face_flat[k] = std::abs(u.values[k] - u.values[k - 1]) / dr <= rep.flat_tol ? 1 : 0;

    rep.zone_of.assign(u.n, -1);
    int i = 0;
    while (i < u.n) {
        int j = i;
        while (j + 1 < u.n && face_flat[j + 1]) ++j;
        FlatZone zone;
        double level_sum = 0.0;
        for (int c = i; c <= j; ++c) {
            zone.cells.push_back(c);
            rep.zone_of[c] = static_cast<int>(rep.flat_zones.size());
            zone.area += sigma * u.cell_weight(c);
            level_sum += u.values[c];
        }
        zone.level = level_sum / static_cast<double>(zone.cells.size());
        // single cells walled off by two jump faces are not flat zones
        if (zone.cells.size() > 1 || (face_flat[i] && face_flat[j + 1])) {
            rep.flat_area += zone.area;
            rep.flat_zones.push_back(std::move(zone));
        } else {
            for (int c = i; c <= j; ++c) rep.zone_of[c] = -1;
        }
        i = j + 1;
    }

    double top = 0.0, bot = 0.0;
    for (int c = 0; c < u.n; ++c) {
        if (u.values[c] >= rep.m_u - rep.level_band) top += sigma * u.cell_weight(c);
        if (u.values[c] <= rep.min_u + rep.level_band) bot += sigma * u.cell_weight(c);
    }
    rep.max_level_area = top;
    rep.min_level_area = bot;
    rep.max_zone_positive = top > 0.0;
    rep.strict_clipping = rep.datum_constant ||
                          (rep.min_u > rep.min_g + cfg.clip_margin &&
                           rep.m_u < rep.m_g - cfg.clip_margin && rep.min_u <= rep.m_u);

    for (int k = 1; k < u.n; ++k) {
        const double d = std::abs(u.values[k] - u.values[k - 1]);
        if (d > rep.jump_tol) {
            rep.jump_radii.push_back(u.face(k));
            rep.jump_magnitudes.push_back(d);
        }
    }
    return rep;
}

// Quantitative staircase bound: flat_area >= 2 (lambda/osc g)^N (1 - c h) and
// the sharper extreme-level form |{u = m_u}| >= (lambda/(m_g - m_u))^N (1 - c h).
// The sharp form comes from the full-space isoperimetric inequality, so it is
// asserted for the max-level zone (interior for our data); the min-level
// counterpart is reported but not folded into sharp_ok, since a minimum zone
// hugging the domain boundary has small relative perimeter and legitimately
// escapes the bound.
struct QuantBoundReport {
    double flat_area = 0.0, bound = 0.0;
    double max_level_area = 0.0, sharp_bound = 0.0;
    double min_level_area = 0.0, sharp_bound_min = 0.0;
    bool overall_ok = false, sharp_ok = false;
};

inline QuantBoundReport quantitative_bound_check(const StaircaseReport& rep,
                                                 double slack_c = 4.0) {
    QuantBoundReport q;
    const double shrink = std::max(0.0, 1.0 - slack_c * rep.spacing);
    q.flat_area = rep.flat_area;
    q.bound = rep.bound_value * shrink;
    q.overall_ok = q.flat_area >= q.bound;
    q.max_level_area = rep.max_level_area;
    q.min_level_area = rep.min_level_area;
    if (rep.m_g > rep.m_u)
        q.sharp_bound = std::pow(rep.lambda / (rep.m_g - rep.m_u), rep.dim) * shrink;
    if (rep.min_u > rep.min_g)
        q.sharp_bound_min = std::pow(rep.lambda / (rep.min_u - rep.min_g), rep.dim) * shrink;
    q.sharp_ok = q.max_level_area >= q.sharp_bound;
    return q;
}

inline bool is_constant(const GridImage& u, double eps) { return u.oscillation() <= eps; }
inline bool is_constant(const RadialProfile& u, double eps) { return u.oscillation() <= eps; }

// Bisection for the extinction threshold: smallest lambda with u_lambda
// constant (to flat_eps). Relies on monotonicity of constancy in lambda.
inline double find_lambda_star(const GridImage& g, double lo, double hi, double tol,
                               SolverConfig proto = {}, int* solves = nullptr) {
    if (!(hi > lo) || !(tol > 0.0)) throw BadInput("find_lambda_star: bad range or tol");
    const double osc = g.oscillation();
    if (osc == 0.0) return 0.0;
    const double flat_eps = 1e-4 * osc;
    int count = 0;
    SolveResult warm;
    bool have_warm = false;
    auto constant_at = [&](double lambda) {
        SolverConfig cfg = proto;
        cfg.lambda = lambda;
        warm = solve_rof(g, cfg, have_warm ? &warm : nullptr);
        have_warm = true;
        ++count;
        return is_constant(warm.u, flat_eps);
    };
    if (!constant_at(hi)) throw RangeExhausted("find_lambda_star: not constant at range top");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (constant_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    if (solves) *solves = count;
    return 0.5 * (lo + hi);
}

inline double find_lambda_star(const RadialProfile& g, double lo, double hi, double tol,
                               RadialSolverConfig proto = {}, int* solves = nullptr) {
    if (!(hi > lo) || !(tol > 0.0)) throw BadInput("find_lambda_star: bad range or tol");
    const double osc = g.oscillation();
    if (osc == 0.0) return 0.0;
    const double flat_eps = 1e-4 * osc;
    int count = 0;
    RadialDual warm;
    bool have_warm = false;
    auto constant_at = [&](double lambda) {
        RadialSolverConfig cfg = proto;
        cfg.lambda = lambda;
        RadialSolveResult r = solve_radial_dual(g, cfg, have_warm ? &warm : nullptr);
        warm = std::move(r.z);
        have_warm = true;
        ++count;
        return is_constant(r.u, flat_eps);
    };
    if (!constant_at(hi)) throw RangeExhausted("find_lambda_star: not constant at range top");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (constant_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    if (solves) *solves = count;
    return 0.5 * (lo + hi);
}

// Top-level staircase set S = {u >= max u - band}.
inline LevelSet staircase_set(const GridImage& u, double band) {
    LevelSet s(u.width, u.height, u.h, u.max_value() - band);
    const double thr = u.max_value() - band;
    for (std::size_t i = 0; i < u.values.size(); ++i) s.mask[i] = u.values[i] >= thr ? 1 : 0;
    return s;
}

// Euclidean boundary length estimate: isotropic TV of the mollified
// indicator (two 3x3 box blurs). The mollification removes the pixel
// staircase bias that raw edge counting suffers from; error is ~1-3% for
// smooth shapes at the probe resolutions.
inline double euclidean_perimeter(const LevelSet& e) {
    GridImage m(e.width, e.height, e.h);
    for (std::size_t i = 0; i < e.mask.size(); ++i) m.values[i] = e.mask[i] ? 1.0 : 0.0;
    for (int rep = 0; rep < 2; ++rep) {
        GridImage out = m;
        for (int y = 0; y < m.height; ++y)
            for (int x = 0; x < m.width; ++x) {
                double s = 0.0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        s += m(std::clamp(x + dx, 0, m.width - 1),
                               std::clamp(y + dy, 0, m.height - 1));
                out(x, y) = s / 9.0;
            }
        m = std::move(out);
    }
    return tv_iso(m);
}

struct CheegerReport {
    std::vector<double> lambdas;
    std::vector<LevelSet> sets;     // S_lambda = {u >= m_u - band}
    std::vector<double> areas;
    std::vector<double> perimeters; // Euclidean estimate
    std::vector<double> ratios;     // perimeter / area; its inverse estimates R*
    std::vector<double> m_u;
    double max_sym_diff_area = 0.0; // across lambda pairs
};

// For g the indicator of a convex set, the top staircase set approximates
// the Cheeger set of C and is independent of lambda below the extinction
// threshold.
inline CheegerReport cheeger_probe(const GridImage& g, const std::vector<double>& lambdas,
                                   SolverConfig proto = {}, double band = -1.0) {
    CheegerReport rep;
    SolveResult warm;
    bool have_warm = false;
    for (double lam : lambdas) {
        SolverConfig cfg = proto;
        cfg.lambda = lam;
        warm = have_warm ? solve_rof(g, cfg, &warm) : solve_rof_cascade(g, cfg);
        have_warm = true;
        const double b = band > 0.0 ? band : 1e-4 * std::max(1.0, g.oscillation());
        LevelSet s = staircase_set(warm.u, b);
        rep.lambdas.push_back(lam);
        rep.areas.push_back(s.area());
        rep.perimeters.push_back(euclidean_perimeter(s));
        rep.ratios.push_back(rep.perimeters.back() / rep.areas.back());
        rep.m_u.push_back(warm.u.max_value());
        rep.sets.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < rep.sets.size(); ++a)
        for (std::size_t b = a + 1; b < rep.sets.size(); ++b) {
            std::size_t diff = 0;
            for (std::size_t i = 0; i < rep.sets[a].mask.size(); ++i)
                diff += rep.sets[a].mask[i] != rep.sets[b].mask[i];
            rep.max_sym_diff_area =
                std::max(rep.max_sym_diff_area, static_cast<double>(diff) * g.h * g.h);
        }
    return rep;
}

// Monotonicity of the dual-slack sets across sorted lambdas on radial data.
// The carried-slack inequality (mu - |z_mu|) >= (lambda - |z_lambda|) is the
// sharp facewise form of {|z_lambda| < lambda} in {|z_mu| < mu}; faces may
// regress by at most sat_tol*lambda.
struct SlackChainReport {
    std::vector<double> lambdas;
    double max_slack_regression = 0.0; // max over pairs/faces of slack_lo - slack_hi
    double tolerance = 0.0;
    bool ok = false;
};

inline SlackChainReport radial_slack_chain_check(const RadialProfile& g,
                                                 std::vector<double> lambdas,
                                                 double sat_tol = 1e-3,
                                                 RadialSolverConfig proto = {}) {
    std::sort(lambdas.begin(), lambdas.end());
    SlackChainReport rep;
    rep.lambdas = lambdas;
    std::vector<std::vector<double>> slacks;
    RadialDual warm;
    bool have_warm = false;
    for (double lam : lambdas) {
        RadialSolverConfig cfg = proto;
        cfg.lambda = lam;
        RadialSolveResult r = solve_radial_dual(g, cfg, have_warm ? &warm : nullptr);
        warm = r.z;
        have_warm = true;
        std::vector<double> s(g.n + 1);
        for (int k = 0; k <= g.n; ++k) s[k] = lam - std::abs(r.z.values[k]);
        slacks.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < lambdas.size(); ++a)
        for (std::size_t b = a + 1; b < lambdas.size(); ++b)
            for (int k = 0; k <= g.n; ++k)
                rep.max_slack_regression =
                    std::max(rep.max_slack_regression, slacks[a][k] - slacks[b][k]);
    rep.tolerance = sat_tol * (lambdas.empty() ? 1.0 : lambdas.front());
    rep.ok = rep.max_slack_regression <= rep.tolerance;
    return rep;
}

// Measured failure of staircase-set monotonicity on 2-D data: area of
// S_{lambda2} \ S_{lambda1} for lambda2 < lambda1.
struct NonmonotoneWitness {
    LevelSet s1, s2;
    double area_s2_minus_s1 = 0.0;
    double area_s1_minus_s2 = 0.0;
};

inline NonmonotoneWitness staircase_nonmonotone_witness(const GridImage& g, double lambda1,
                                                        double lambda2, SolverConfig proto = {},
                                                        double band = -1.0) {
    const double b = band > 0.0 ? band : 1e-4 * std::max(1.0, g.oscillation());
    SolverConfig c1 = proto, c2 = proto;
    c1.lambda = lambda1;
    c2.lambda = lambda2;
    const SolveResult r1 = solve_rof_cascade(g, c1);
    const SolveResult r2 = solve_rof(g, c2, &r1);
    NonmonotoneWitness w;
    w.s1 = staircase_set(r1.u, b);
    w.s2 = staircase_set(r2.u, b);
    std::size_t d21 = 0, d12 = 0;
    for (std::size_t i = 0; i < w.s1.mask.size(); ++i) {
        if (w.s2.mask[i] && !w.s1.mask[i]) ++d21;
        if (w.s1.mask[i] && !w.s2.mask[i]) ++d12;
    }
    w.area_s2_minus_s1 = static_cast<double>(d21) * g.h * g.h;
    w.area_s1_minus_s2 = static_cast<double>(d12) * g.h * g.h;
    return w;
}

// Radial jump detection and the inclusion chain J_{u_mu} in J_{u_lambda} in J_g
// (each jump matched within one cell).
inline std::vector<double> jump_radii(const RadialProfile& u, double jump_tol) {
    std::vector<double> radii;
    for (int k = 1; k < u.n; ++k)
        if (std::abs(u.values[k] - u.values[k - 1]) > jump_tol) radii.push_back(u.face(k));
    return radii;
}

inline bool jumps_within_one_cell(const std::vector<double>& inner,
                                  const std::vector<double>& outer, double dr) {
    for (double r : inner) {
        bool found = false;
        for (double s : outer)
            if (std::abs(r - s) <= dr * (1.0 + 1e-9)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

struct JumpInclusionReport {
    std::vector<double> jumps_g, jumps_lo, jumps_hi; // lo = smaller lambda
    bool hi_in_lo = false;                           // J_{u_mu} in J_{u_lambda}
    bool lo_in_g = false;                            // J_{u_lambda} in J_g
};

inline JumpInclusionReport jump_inclusion_check(const RadialProfile& g, double lambda,
                                                double mu, RadialSolverConfig proto = {},
                                                double jump_tol = -1.0) {
    if (lambda > mu) std::swap(lambda, mu);
    const double jt = jump_tol > 0.0 ? jump_tol : 0.05 * std::max(1e-12, g.oscillation());
    RadialSolverConfig clo = proto, chi = proto;
    clo.lambda = lambda;
    chi.lambda = mu;
    const RadialProfile ulo = solve_radial_dual(g, clo).u;
    const RadialProfile uhi = solve_radial_dual(g, chi).u;
    JumpInclusionReport rep;
    rep.jumps_g = jump_radii(g, jt);
    rep.jumps_lo = jump_radii(ulo, jt);
    rep.jumps_hi = jump_radii(uhi, jt);
    rep.hi_in_lo = jumps_within_one_cell(rep.jumps_hi, rep.jumps_lo, g.dr());
    rep.lo_in_g = jumps_within_one_cell(rep.jumps_lo, rep.jumps_g, g.dr());
    return rep;
}

// Local-extremum flatness: every cell that is a local max/min within radius
// rho cells (domain margin excluded) must belong to a flat zone whose area is
// at least density_floor * omega_N (rho * spacing)^N, density_floor = 2^-N
// by default.
struct ExtremumRecord {
    int cell = -1;
    bool is_max = false;
    double zone_area = 0.0;
    double required = 0.0;
    bool ok = false;
};

struct ExtremaFlatnessReport {
    std::vector<ExtremumRecord> extrema;
    bool all_ok = true;
};

inline double unit_ball_volume(int dim) {
    return std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

inline ExtremaFlatnessReport local_extrema_flatness(const GridImage& u,
                                                    const StaircaseReport& rep, int rho = 3,
                                                    double density_floor = -1.0) {
    const double floor_c = density_floor > 0.0 ? density_floor : 0.25; // 2^-N, N = 2
    const double required = floor_c * unit_ball_volume(2) * std::pow(rho * u.h, 2);
    ExtremaFlatnessReport out;
    for (int y = rho; y < u.height - rho; ++y)
        for (int x = rho; x < u.width - rho; ++x) {
            const double v = u(x, y);
            bool is_max = true, is_min = true;
            for (int dy = -rho; dy <= rho && (is_max || is_min); ++dy)
                for (int dx = -rho; dx <= rho; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (dx * dx + dy * dy > rho * rho) continue;
                    const double w = u(x + dx, y + dy);
                    if (w > v) is_max = false;
                    if (w < v) is_min = false;
                    if (!is_max && !is_min) break;
                }
            if (!is_max && !is_min) continue;
            ExtremumRecord rec;
            rec.cell = static_cast<int>(u.idx(x, y));
            rec.is_max = is_max;
            const int z = rep.zone_of[rec.cell];
            rec.zone_area = z >= 0 ? rep.flat_zones[z].area : 0.0;
            rec.required = required;
            rec.ok = rec.zone_area >= required;
            out.all_ok = out.all_ok && rec.ok;
            out.extrema.push_back(rec);
        }
    return out;
}

inline ExtremaFlatnessReport local_extrema_flatness(const RadialProfile& u,
                                                    const StaircaseReport& rep, int rho = 3,
                                                    double density_floor = -1.0) {
    const double floor_c = density_floor > 0.0 ? density_floor : std::pow(2.0, -u.dim);
    const double required =
        floor_c * unit_ball_volume(u.dim) * std::pow(rho * u.dr(), u.dim);
    ExtremaFlatnessReport out;
    for (int i = rho; i < u.n - rho; ++i) {
        const double v = u.values[i];
        bool is_max = true, is_min = true;
        for (int d = -rho; d <= rho; ++d) {
            if (d == 0) continue;
            const double w = u.values[i + d];
            if (w > v) is_max = false;
            if (w < v) is_min = false;
        }
        if (!is_max && !is_min) continue;
        ExtremumRecord rec;
        rec.cell = i;
        rec.is_max = is_max;
        const int z = rep.zone_of[i];
        rec.zone_area = z >= 0 ? rep.flat_zones[z].area : 0.0;
        rec.required = required;
        rec.ok = rec.zone_area >= required;
        out.all_ok = out.all_ok && rec.ok;
        out.extrema.push_back(rec);
    }
    return out;
}

} // namespace tvsc
