#pragma once

// Exact solver for the discrete prescribed-curvature binary problem
//   min_E  lambda * Per(E) + sum_{i in E} (t - g_i) h^2
// with the anisotropic 4-neighbour perimeter, via an s-t min cut.
// Minimal and maximal optimal sets come from residual-graph reachability.

#include <cmath>
#include <vector>

#include "tvsc/errors.hpp"
#include "tvsc/grid.hpp"
#include "tvsc/maxflow.hpp"
#include "tvsc/rof.hpp"

namespace tvsc {

struct CutProblem {
    GridImage g;
    double lambda = 0.1;
    double level = 0.0;

    void validate() const {
        tvsc::validate(g);
        if (!(lambda > 0.0)) throw BadInput("CutProblem: lambda must be > 0");
    }
};

struct CutSolution {
    LevelSet minimal;
    LevelSet maximal;
    double energy = 0.0;
};

// Energy of an arbitrary mask under the cut functional.
inline double cut_energy(const GridImage& g, double lambda, double t,
                         const std::vector<std::uint8_t>& mask) {
    const double h = g.h;
    double e = 0.0;
    std::size_t edges = 0;
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            const std::size_t i = g.idx(x, y);
            if (mask[i]) e += (t - g.values[i]) * h * h;
            if (x + 1 < g.width && mask[i] != mask[i + 1]) ++edges;
            if (y + 1 < g.height && mask[i] != mask[i + g.width]) ++edges;
        }
    }
    return e + lambda * h * static_cast<double>(edges);
}

inline CutSolution solve_cut(const CutProblem& p) {
    p.validate();
    const GridImage& g = p.g;
    const int W = g.width, H = g.height;
    const int n = W * H;
    const int s = n, t = n + 1;
    const double h = g.h;
    const double w_edge = p.lambda * h;

    MaxFlowGraph graph(n + 2);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const int i = static_cast<int>(g.idx(x, y));
            const double c = (p.level - g.values[i]) * h * h;
            if (c >= 0.0)
                graph.add_edge(i, t, c);   // cut when i is selected
            else
                graph.add_edge(s, i, -c);  // cut when i is not selected
            if (x + 1 < W) {
                graph.add_edge(i, i + 1, w_edge);
                graph.add_edge(i + 1, i, w_edge);
            }
            if (y + 1 < H) {
                graph.add_edge(i, i + W, w_edge);
                graph.add_edge(i + W, i, w_edge);
            }
        }
    }
    graph.max_flow(s, t);

    CutSolution sol;
    sol.minimal = LevelSet(W, H, h, p.level);
    sol.maximal = LevelSet(W, H, h, p.level);
    const auto reach_s = graph.source_side(s);
    const auto reach_t = graph.sink_side(t);
    for (int i = 0; i < n; ++i) {
        sol.minimal.mask[i] = reach_s[i];
        sol.maximal.mask[i] = reach_t[i] ? 0 : 1;
    }
    // Energy from the extracted mask, not the flow value, so it is the same
    // arithmetic as cut_energy on any competitor.
    sol.energy = cut_energy(g, p.lambda, p.level, sol.minimal.mask);
    return sol;
}

struct ThresholdLevelReport {
    double level = 0.0;
    std::size_t below_min = 0;   // pixels in minimal but not in {u > t} (outside band)
    std::size_t above_max = 0;   // pixels in {u > t} but not in maximal (outside band)
    double cut_energy = 0.0;
    double thresh_energy = 0.0;
    bool inclusion_ok = false;
    bool energy_ok = false;
};

struct ThresholdConsistencyReport {
    std::vector<ThresholdLevelReport> levels;
    bool all_ok = false;
};

// Certifies the threshold theorem: for each t, minimal  <= {u > t} <= maximal
// up to pixels with |u - t| <= level_tol, and the thresholded mask's energy
// exceeds the optimal cut energy by at most energy_tol.
inline ThresholdConsistencyReport threshold_consistency(const GridImage& g, double lambda,
                                                        const std::vector<double>& levels,
                                                        const GridImage& u,
                                                        double level_tol = 1e-5,
                                                        double energy_rel_tol = 1e-5) {
    ThresholdConsistencyReport rep;
    rep.all_ok = true;
    for (double t : levels) {
        ThresholdLevelReport lr;
        lr.level = t;
        const CutSolution cs = solve_cut({g, lambda, t});
        lr.cut_energy = cs.energy;
        const LevelSet thr = level_set(u, t);
        lr.thresh_energy = cut_energy(g, lambda, t, thr.mask);
        for (std::size_t i = 0; i < thr.mask.size(); ++i) {
            if (std::abs(u.values[i] - t) <= level_tol) continue;
            if (cs.minimal.mask[i] && !thr.mask[i]) ++lr.below_min;
            if (thr.mask[i] && !cs.maximal.mask[i]) ++lr.above_max;
        }
        lr.inclusion_ok = lr.below_min == 0 && lr.above_max == 0;
        const double etol = energy_rel_tol * (1.0 + std::abs(lr.cut_energy));
        lr.energy_ok = lr.thresh_energy >= lr.cut_energy - 1e-9 &&
                       lr.thresh_energy <= lr.cut_energy + etol;
        rep.all_ok = rep.all_ok && lr.inclusion_ok && lr.energy_ok;
        rep.levels.push_back(lr);
    }
    return rep;
}

// Nestedness of superlevels: the minimal solution at the higher level is
// contained in the maximal solution at the lower one.
inline bool monotone_levels(const GridImage& g, double lambda, double t1, double t2) {
    if (t1 > t2) std::swap(t1, t2);
    const CutSolution hi = solve_cut({g, lambda, t2});
    const CutSolution lo = solve_cut({g, lambda, t1});
    return hi.minimal.subset_of(lo.maximal);
}

// Euclidean diameter of a mask, measured over boundary pixel centres and
// padded by one cell of extent.
inline double mask_diameter(const LevelSet& e) {
    std::vector<std::pair<int, int>> boundary;
    for (int y = 0; y < e.height; ++y)
        for (int x = 0; x < e.width; ++x) {
            if (!e.mask[e.idx(x, y)]) continue;
            const bool edge = x == 0 || y == 0 || x == e.width - 1 || y == e.height - 1 ||
                              !e.mask[e.idx(x - 1, y)] || !e.mask[e.idx(x + 1, y)] ||
                              !e.mask[e.idx(x, y - 1)] || !e.mask[e.idx(x, y + 1)];
            if (edge) boundary.emplace_back(x, y);
        }
    double d2 = 0.0;
    for (std::size_t a = 0; a < boundary.size(); ++a)
        for (std::size_t b = a + 1; b < boundary.size(); ++b) {
            const double dx = boundary[a].first - boundary[b].first;
            const double dy = boundary[a].second - boundary[b].second;
            d2 = std::max(d2, dx * dx + dy * dy);
        }
    return std::sqrt(d2) * e.h + e.h;
}

// Discrete isoperimetric sanity: sqrt(area) <= per/(2 sqrt(pi)) * (1 + 4h/diam)
// with the full (plane-subset) perimeter, which dominates the Euclidean one.
inline bool isoperimetric_ok(const LevelSet& e) {
    if (e.empty()) return true;
    const double area = e.area();
    const double per = e.full_perimeter();
    const double diam = mask_diameter(e);
    return std::sqrt(area) <= per / (2.0 * std::sqrt(M_PI)) * (1.0 + 4.0 * e.h / diam);
}

} // namespace tvsc
