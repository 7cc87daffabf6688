#pragma once

// Gradient flow of the total variation by iterated resolvents (implicit
// Euler): u(t) is approximated by T_{t/n} applied n times. For radial data
// the semigroup collapses the product and one resolvent suffices; the
// two-squares datum witnesses the failure of that identity off radial
// symmetry.

#include <atomic>
#include <cmath>
#include <mutex>
#include <vector>

#include "tvsc/grid.hpp"
#include "tvsc/parallel.hpp"
#include "tvsc/radial.hpp"
#include "tvsc/rof.hpp"

namespace tvsc {

inline GridImage flow(const GridImage& g, double t, int substeps, SolverConfig proto = {}) {
    if (t < 0.0 || substeps < 1) throw BadInput("flow: need t >= 0 and substeps >= 1");
    if (t == 0.0) return g;
    proto.lambda = t / substeps;
    GridImage u = g;
    SolveResult warm;
    bool have_warm = false;
    for (int k = 0; k < substeps; ++k) {
        warm = solve_rof(u, proto, have_warm ? &warm : nullptr);
        have_warm = true;
        u = warm.u;
    }
    return u;
}

inline RadialProfile flow(const RadialProfile& g, double t, int substeps,
                          RadialSolverConfig proto = {}) {
    if (t < 0.0 || substeps < 1) throw BadInput("flow: need t >= 0 and substeps >= 1");
    if (t == 0.0) return g;
    proto.lambda = t / substeps;
    RadialProfile u = g;
    RadialDual warm;
    bool have_warm = false;
    for (int k = 0; k < substeps; ++k) {
        RadialSolveResult r = solve_radial_dual(u, proto, have_warm ? &warm : nullptr);
        u = std::move(r.u);
        warm = std::move(r.z);
        have_warm = true;
    }
    return u;
}

// Doubling study: states for substeps 1, 2, 4, ..., n_max together with the
// refinement defects ||u_n - u_2n||_2. times/states order matches substeps.
template <class State>
struct FlowStudy {
    double t = 0.0;
    std::vector<int> substeps;
    std::vector<State> states;
    std::vector<double> defects;

    const State& finest() const { return states.back(); }
};

template <class State, class Config>
FlowStudy<State> flow_study(const State& g, double t, int n_max, const Config& proto) {
    FlowStudy<State> study;
    study.t = t;
    for (int n = 1; n <= n_max; n *= 2) {
        study.substeps.push_back(n);
        study.states.push_back(flow(g, t, n, proto));
        if (study.states.size() >= 2)
            study.defects.push_back(
                dist_l2(study.states[study.states.size() - 2], study.states.back()));
    }
    return study;
}

// || flow(g, t, n_big) - T_t(g) ||_2; vanishes (up to solver tolerance) for
// radial data.
inline double radial_equivalence_defect(const RadialProfile& g, double t,
                                        RadialSolverConfig proto = {}, int n_big = 64) {
    const RadialProfile via_flow = flow(g, t, n_big, proto);
    const RadialProfile direct = resolvent(g, t, proto);
    return dist_l2(via_flow, direct);
}

// Same quantity for 2-D data; large for non-radial data where the flow and
// the single resolvent disagree.
inline double flow_vs_resolvent_gap_inf(const GridImage& g, double t, SolverConfig proto = {},
                                        int n_big = 64) {
    const GridImage via_flow = flow(g, t, n_big, proto);
    proto.lambda = t;
    const GridImage direct = solve_rof(g, proto).u;
    return dist_inf(via_flow, direct);
}

// Value series at the domain centre as lambda = t sweeps a uniform grid.
// The centre is a grid corner: the reported value is the mean of the four
// adjacent pixels, as recorded in the JSON output.
struct OriginTrace {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> second_differences; // v[i-1] - 2 v[i] + v[i+1]
    double dt = 0.0;

    double max_curvature() const {
        double m = 0.0;
        for (double d : second_differences) m = std::max(m, std::abs(d));
        return m / (dt * dt);
    }
};

inline double centre_corner_mean(const GridImage& u) {
    if (u.width < 2 || u.height < 2) throw BadInput("centre_corner_mean: grid too small");
    const int cx = u.width / 2, cy = u.height / 2;
    return 0.25 * (u(cx - 1, cy - 1) + u(cx, cy - 1) + u(cx - 1, cy) + u(cx, cy));
}

inline OriginTrace origin_trace(const GridImage& g, const std::vector<double>& ts,
                                SolverConfig proto = {}, int jobs = 1) {
    if (ts.size() < 3) throw BadInput("origin_trace: need at least 3 times");
    OriginTrace tr;
    tr.times = ts;
    tr.dt = ts[1] - ts[0];
    for (std::size_t i = 1; i + 1 < ts.size(); ++i)
        if (std::abs((ts[i + 1] - ts[i]) - tr.dt) > 1e-12 * std::max(1.0, std::abs(tr.dt)))
            throw BadInput("origin_trace: times must be uniformly spaced");
    tr.values.resize(ts.size());
    parallel_for(static_cast<int>(ts.size()), jobs, [&](int i) {
        if (ts[i] == 0.0) {
            tr.values[i] = centre_corner_mean(g);
            return;
        }
        SolverConfig cfg = proto;
        cfg.lambda = ts[i];
        tr.values[i] = centre_corner_mean(solve_rof_cascade(g, cfg).u);
    });
    for (std::size_t i = 1; i + 1 < ts.size(); ++i)
        tr.second_differences.push_back(tr.values[i - 1] - 2.0 * tr.values[i] +
                                        tr.values[i + 1]);
    return tr;
}

} // namespace tvsc
