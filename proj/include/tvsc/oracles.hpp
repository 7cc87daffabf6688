#pragma once

// Independent reference computations used by the verification suites and the
// tests. Nothing here shares code with the solvers it checks: the taut
// string is a direct geometric construction, the cut oracle enumerates all
// masks, and the disc values come from the closed-form radial construction.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "tvsc/errors.hpp"
#include "tvsc/grid.hpp"
#include "tvsc/levelset.hpp"
#include "tvsc/radial.hpp"

namespace tvsc {

// Taut string through the tube lo[k] <= phi_k <= hi[k], k = 0..n, with both
// endpoints pinned (lo == hi there). Returns the string values phi. Greedy
// knot construction: walk forward keeping the interval of feasible chord
// slopes; when it empties, the string must touch the tube at the tightest
// point, which becomes a knot.
inline std::vector<double> taut_string_path(const std::vector<double>& lo,
                                            const std::vector<double>& hi) {
    const int n = static_cast<int>(lo.size()) - 1;
    if (n < 1 || hi.size() != lo.size()) throw BadInput("taut_string_path: bad tube");
    std::vector<double> phi(n + 1);
    int base = 0;
    double ybase = lo[0];
    phi[0] = ybase;
    while (base < n) {
        double min_hi_slope = std::numeric_limits<double>::infinity();
        double max_lo_slope = -std::numeric_limits<double>::infinity();
        int min_hi_idx = -1, max_lo_idx = -1;
        int emit_idx = -1;
        double emit_y = 0.0;
        for (int k = base + 1; k <= n; ++k) {
            const double dx = k - base;
            const double s_hi = (hi[k] - ybase) / dx;
            const double s_lo = (lo[k] - ybase) / dx;
            if (s_lo > min_hi_slope) { // forced to bend down on the upper bound
                emit_idx = min_hi_idx;
                emit_y = hi[min_hi_idx];
                break;
            }
            if (s_hi < max_lo_slope) { // forced to bend up on the lower bound
                emit_idx = max_lo_idx;
                emit_y = lo[max_lo_idx];
                break;
            }
            if (s_hi < min_hi_slope) {
                min_hi_slope = s_hi;
                min_hi_idx = k;
            }
            if (s_lo > max_lo_slope) {
                max_lo_slope = s_lo;
                max_lo_idx = k;
            }
        }
        if (emit_idx < 0) { // straight feasible segment to the pinned end
            emit_idx = n;
            emit_y = lo[n];
        }
        const double slope = (emit_y - ybase) / (emit_idx - base);
        for (int k = base + 1; k <= emit_idx; ++k) phi[k] = ybase + slope * (k - base);
        base = emit_idx;
        ybase = emit_y;
    }
    return phi;
}

// Exact minimizer of the 1-D problem  lambda*sum|u_{i+1}-u_i| +
// (dr/2)*sum (u_i-g_i)^2  via the taut string through the tube of half-width
// lambda around the running integral of g.
inline std::vector<double> taut_string_rof_1d(const std::vector<double>& g, double dr,
                                              double lambda) {
    const int n = static_cast<int>(g.size());
    if (n < 1 || !(dr > 0.0) || lambda < 0.0) throw BadInput("taut_string_rof_1d: bad input");
    std::vector<double> H(n + 1, 0.0);
    for (int i = 0; i < n; ++i) H[i + 1] = H[i] + g[i] * dr;
    std::vector<double> lo(n + 1), hi(n + 1);
    for (int k = 0; k <= n; ++k) {
        lo[k] = H[k] - lambda;
        hi[k] = H[k] + lambda;
    }
    lo[0] = hi[0] = H[0];
    lo[n] = hi[n] = H[n];
    const std::vector<double> phi = taut_string_path(lo, hi);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = (phi[i + 1] - phi[i]) / dr;
    return u;
}

// Brute-force minimum of the cut functional over all 2^(W*H) masks.
struct EnumCutResult {
    double energy = 0.0;
    std::vector<std::uint8_t> minimal; // intersection of all optimal masks
    std::vector<std::uint8_t> maximal; // union of all optimal masks
    long optima = 0;
};

inline EnumCutResult enumerate_cut(const GridImage& g, double lambda, double t,
                                   double tie_eps = 1e-12) {
    const int n = g.width * g.height;
    if (n > 20) throw BadInput("enumerate_cut: grid too large for enumeration");
    EnumCutResult best;
    best.energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> mask(n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        for (int i = 0; i < n; ++i) mask[i] = (bits >> i) & 1u;
        const double e = cut_energy(g, lambda, t, mask);
        if (e < best.energy - tie_eps) {
            best.energy = e;
            best.minimal = mask;
            best.maximal = mask;
            best.optima = 1;
        } else if (e <= best.energy + tie_eps) {
            best.energy = std::min(best.energy, e);
            for (int i = 0; i < n; ++i) {
                best.minimal[i] = best.minimal[i] && mask[i];
                best.maximal[i] = best.maximal[i] || mask[i];
            }
            ++best.optima;
        }
    }
    return best;
}

// Closed-form solution for the datum = indicator of the unit disc inside the
// ball B(0,R), dimension 2: u = inside on [0,1), outside on (1,R], with the
// dual z = -lambda*r inside and c*r/2 + K/r outside pinned to z(1) = -lambda,
// z(R) = 0. The two levels merge at lambda_star.
struct DiscBallSolution {
    double inside = 0.0;
    double outside = 0.0;
    double lambda_star = 0.0;
};

inline DiscBallSolution disc_ball_solution(double lambda, double R) {
    DiscBallSolution s;
    s.lambda_star = (R * R - 1.0) / (2.0 * R * R);
    if (lambda >= s.lambda_star) {
        s.inside = s.outside = 1.0 / (R * R); // weighted mean of the datum
    } else {
        s.inside = 1.0 - 2.0 * lambda;
        s.outside = 2.0 * lambda / (R * R - 1.0);
    }
    return s;
}

// Coarea integral of an integer-valued image by summing perimeters over the
// finitely many inter-value levels (dt = 1 between consecutive integers).
inline double coarea_integral_integer(const GridImage& u) {
    const int lo = static_cast<int>(std::lround(u.min_value()));
    const int hi = static_cast<int>(std::lround(u.max_value()));
    double total = 0.0;
    for (int k = lo; k < hi; ++k) total += level_set(u, k + 0.5).perimeter();
    return total;
}

// Central finite differences of the radial dual objective, for the
// derivative check against radial_dual_gradient.
inline std::vector<double> radial_dual_gradient_fd(const RadialProfile& g,
                                                   const std::vector<double>& faces,
                                                   double eps = 1e-6) {
    std::vector<double> grad(faces.size(), 0.0);
    std::vector<double> probe = faces;
    for (std::size_t k = 1; k + 1 < faces.size(); ++k) {
        probe[k] = faces[k] + eps;
        const double ep = radial_dual_objective(g, probe);
        probe[k] = faces[k] - eps;
        const double em = radial_dual_objective(g, probe);
        probe[k] = faces[k];
        grad[k] = (ep - em) / (2.0 * eps);
    }
    return grad;
}

} // namespace tvsc
