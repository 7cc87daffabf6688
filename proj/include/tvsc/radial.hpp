#pragma once

// Reduced radial problem on (0, R] in dimension N >= 1. The profile u lives
// at cell centres r_i = (i+1/2) dr, the dual z at faces f_j = j dr with both
// end faces pinned to zero. The conservative divergence
//   div_i = (z_{i+1} f_{i+1}^{N-1} - z_i f_i^{N-1}) / (r_i^{N-1} dr)
// never divides by r = 0: the innermost face carries weight f_0^{N-1} = 0
// for N >= 2, which also hard-codes z(0) = 0.
//
// The dual energy  E(z) = sum_i w_i (div_i + g_i)^2,  w_i = r_i^{N-1} dr,
// is minimized over the box |z| <= lambda by accelerated projected gradient
// (step 1/L from the quadratic's row-sum spectral bound) followed by an
// active-set polish that solves the free tridiagonal system exactly.

#include <algorithm>
#include <cmath>
#include <vector>

#include "tvsc/errors.hpp"

namespace tvsc {

// Surface measure of the unit sphere in R^N (2, 2pi, 4pi, ...).
inline double sphere_measure(int dim) {
    return dim * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

struct RadialProfile {
    double R = 1.0;
    int n = 0;
    int dim = 1;
    std::vector<double> values; // at r_i = (i+1/2) R/n

    RadialProfile() = default;
    RadialProfile(double R_, int n_, int dim_, double fill = 0.0)
        : R(R_), n(n_), dim(dim_), values(static_cast<std::size_t>(n_ < 0 ? 0 : n_), fill) {
        if (!(R_ > 0.0) || n_ < 1 || dim_ < 1)
            throw BadInput("RadialProfile: need R > 0, n >= 1, dim >= 1");
    }

    double dr() const { return R / n; }
    double r(int i) const { return (i + 0.5) * dr(); }
    double face(int j) const { return j * dr(); }
    double cell_weight(int i) const { return std::pow(r(i), dim - 1) * dr(); }

    double min_value() const { return *std::min_element(values.begin(), values.end()); }
    double max_value() const { return *std::max_element(values.begin(), values.end()); }
    double oscillation() const { return max_value() - min_value(); }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    bool same_shape(const RadialProfile& o) const {
        return n == o.n && R == o.R && dim == o.dim;
    }
    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Weighted mean over B(0,R).
    double mean() const {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = cell_weight(i);
            num += values[i] * w;
            den += w;
        }
        return num / den;
    }
};

inline void validate(const RadialProfile& p) {
    if (!(p.R > 0.0) || p.n < 1 || p.dim < 1) throw BadInput("RadialProfile: invalid geometry");
    if (p.values.size() != static_cast<std::size_t>(p.n))
        throw BadInput("RadialProfile: value count does not match n");
    if (!p.all_finite()) throw BadInput("RadialProfile: non-finite values");
}

// Weighted L^2 norm over B(0,R): sqrt( sigma_N * sum v_i^2 r_i^{N-1} dr ).
inline double norm_l2(const RadialProfile& p) {
    double s = 0.0;
    for (int i = 0; i < p.n; ++i) s += p.values[i] * p.values[i] * p.cell_weight(i);
    return std::sqrt(sphere_measure(p.dim) * s);
}

inline double dist_l2(const RadialProfile& a, const RadialProfile& b) {
    double s = 0.0;
    for (int i = 0; i < a.n; ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d * a.cell_weight(i);
    }
    return std::sqrt(sphere_measure(a.dim) * s);
}

inline double dist_inf(const RadialProfile& a, const RadialProfile& b) {
    double m = 0.0;
    for (int i = 0; i < a.n; ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

// Scalar dual on the faces, admissible when |z| <= bound with both end
// faces exactly zero.
struct RadialDual {
    double R = 1.0;
    int n = 0;
    int dim = 1;
    double bound = 0.0;
    std::vector<double> values; // n+1 faces, values[0] = values[n] = 0

    RadialDual() = default;
    RadialDual(double R_, int n_, int dim_, double b)
        : R(R_), n(n_), dim(dim_), bound(b), values(static_cast<std::size_t>(n_) + 1, 0.0) {}

    double dr() const { return R / n; }
    double face(int j) const { return j * dr(); }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    bool admissible(double slack = 1e-9) const {
        return values.front() == 0.0 && values.back() == 0.0 &&
               max_abs() <= bound * (1.0 + slack) + slack * 1e-6;
    }
};

namespace radial_detail {

struct Geometry {
    double dr;
    int n;
    int dim;
    std::vector<double> a; // face weights f_j^{N-1}, a[0] = 0 for N >= 2, else 1
    std::vector<double> w; // cell weights r_i^{N-1} dr

    Geometry(double R, int n_, int dim_) : dr(R / n_), n(n_), dim(dim_) {
        a.resize(n + 1);
        w.resize(n);
        for (int j = 0; j <= n; ++j)
            a[j] = dim == 1 ? 1.0 : std::pow(j * dr, dim - 1);
        for (int i = 0; i < n; ++i)
            w[i] = (dim == 1 ? 1.0 : std::pow((i + 0.5) * dr, dim - 1)) * dr;
    }
};

} // namespace radial_detail

// Conservative divergence of raw face values (no admissibility assumed).
inline RadialProfile radial_divergence(const std::vector<double>& faces, double R, int n,
                                       int dim) {
    if (static_cast<int>(faces.size()) != n + 1)
        throw BadInput("radial_divergence: need n+1 face values");
    radial_detail::Geometry geo(R, n, dim);
    RadialProfile d(R, n, dim);
    for (int i = 0; i < n; ++i)
        d.values[i] = (faces[i + 1] * geo.a[i + 1] - faces[i] * geo.a[i]) / geo.w[i];
    return d;
}

inline RadialProfile radial_divergence(const RadialDual& z) {
    return radial_divergence(z.values, z.R, z.n, z.dim);
}

// Dual objective E(z) = sum_i w_i (div_i + g_i)^2 and its gradient
// grad_k = 2 a_k (u_{k-1} - u_k) with u = g + div z. Exposed for the
// finite-difference derivative check.
inline double radial_dual_objective(const RadialProfile& g, const std::vector<double>& faces) {
    radial_detail::Geometry geo(g.R, g.n, g.dim);
    double e = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double d = (faces[i + 1] * geo.a[i + 1] - faces[i] * geo.a[i]) / geo.w[i];
        const double t = d + g.values[i];
        e += geo.w[i] * t * t;
    }
    return e;
}

inline std::vector<double> radial_dual_gradient(const RadialProfile& g,
                                                const std::vector<double>& faces) {
    radial_detail::Geometry geo(g.R, g.n, g.dim);
    std::vector<double> u(g.n);
    for (int i = 0; i < g.n; ++i)
        u[i] = g.values[i] +
               (faces[i + 1] * geo.a[i + 1] - faces[i] * geo.a[i]) / geo.w[i];
    std::vector<double> grad(g.n + 1, 0.0);
    for (int k = 1; k < g.n; ++k) grad[k] = 2.0 * geo.a[k] * (u[k - 1] - u[k]);
    return grad;
}

struct RadialSolverConfig {
    double lambda = 0.1;
    long max_iters = 400000;
    double tol = 1e-9;     // KKT residual target, in value units / max(1, max|g|)
    bool polish = true;    // active-set tridiagonal finish
    int check_interval = 64;

    void validate() const {
        if (lambda < 0.0) throw BadInput("RadialSolverConfig: lambda must be >= 0");
        if (!(tol > 0.0)) throw BadInput("RadialSolverConfig: tol must be > 0");
        if (max_iters < 1) throw BadInput("RadialSolverConfig: max_iters must be >= 1");
    }
};

struct RadialSolveResult {
    RadialProfile u;
    RadialDual z;
    double kkt_residual = 0.0;
    long iters = 0;
    bool converged = false;
};

namespace radial_detail {

inline void compute_u(const Geometry& geo, const RadialProfile& g,
                      const std::vector<double>& z, std::vector<double>& u) {
    for (int i = 0; i < geo.n; ++i)
        u[i] = g.values[i] + (z[i + 1] * geo.a[i + 1] - z[i] * geo.a[i]) / geo.w[i];
}

// KKT violation in value units: |u_k - u_{k-1}| on strictly interior faces,
// one-sided where the box is active.
inline double kkt_residual(const Geometry& geo, const std::vector<double>& z,
                           const std::vector<double>& u, double lambda) {
    const double act = lambda * (1.0 - 1e-12);
    double res = 0.0;
    for (int k = 1; k < geo.n; ++k) {
        const double du = u[k] - u[k - 1];
        double viol;
        if (z[k] >= act)
            viol = std::max(0.0, -du);
        else if (z[k] <= -act)
            viol = std::max(0.0, du);
        else
            viol = std::abs(du);
        res = std::max(res, viol);
    }
    return res;
}

// Per-face steps 1/rowsum_k of the dual Hessian 2 A^T W A. The diagonal
// metric scales out the r^{N-1} degeneracy near the origin; box projection
// stays a componentwise clamp.
inline std::vector<double> face_steps(const Geometry& geo) {
    std::vector<double> s(geo.n + 1, 0.0);
    for (int k = 1; k < geo.n; ++k) {
        const double row = geo.a[k] * (geo.a[k] + geo.a[k - 1]) / geo.w[k - 1] +
                           geo.a[k] * (geo.a[k] + geo.a[k + 1]) / geo.w[k];
        s[k] = 1.0 / (2.0 * row);
    }
    return s;
}

// Solves grad_k = 0 exactly on maximal runs of free faces (SPD tridiagonal,
// Thomas factorization), faces outside the run held at their clamped values.
// Returns false if nothing changed (already the exact solution).
inline bool polish_pass(const Geometry& geo, const RadialProfile& g, double lambda,
                        std::vector<double>& z, double sign_eps) {
    const int n = geo.n;
    const double act_eps = 1e-12 * std::max(1.0, lambda);
    std::vector<int> state(n + 1, 0); // -1 low, 0 free, +1 high; faces 0,n fixed
    state[0] = state[n] = 2;
    for (int k = 1; k < n; ++k) {
        if (z[k] >= lambda - act_eps) state[k] = 1;
        else if (z[k] <= -lambda + act_eps) state[k] = -1;
    }

    bool changed = false;
    for (int round = 0; round < 80; ++round) {
        bool round_changed = false;
        // solve each free run
        int k = 1;
        while (k < n) {
            if (state[k] != 0) {
                ++k;
                continue;
            }
            int kend = k;
            while (kend < n && state[kend] == 0) ++kend; // run = [k, kend)
            const int m = kend - k;
            std::vector<double> diag(m), lower(m), rhs(m);
            for (int j = 0; j < m; ++j) {
                const int f = k + j;
                diag[j] = 2.0 * geo.a[f] * geo.a[f] * (1.0 / geo.w[f - 1] + 1.0 / geo.w[f]);
                rhs[j] = 2.0 * geo.a[f] * (g.values[f] - g.values[f - 1]);
                const double zl = (f - 1 >= 1 && f - 1 < n) ? z[f - 1] : 0.0;
                const double zr = (f + 1 >= 1 && f + 1 < n) ? z[f + 1] : 0.0;
                if (j == 0) rhs[j] += 2.0 * geo.a[f] * geo.a[f - 1] / geo.w[f - 1] * zl;
                if (j == m - 1) rhs[j] += 2.0 * geo.a[f] * geo.a[f + 1] / geo.w[f] * zr;
                if (j > 0) lower[j] = -2.0 * geo.a[f - 1] * geo.a[f] / geo.w[f - 1];
            }
            // Thomas on the SPD tridiagonal (lower[j] couples row j with j-1)
            for (int j = 1; j < m; ++j) {
                const double mfac = lower[j] / diag[j - 1];
                diag[j] -= mfac * lower[j];
                rhs[j] -= mfac * rhs[j - 1];
            }
            std::vector<double> sol(m);
            sol[m - 1] = rhs[m - 1] / diag[m - 1];
            for (int j = m - 2; j >= 0; --j)
                sol[j] = (rhs[j] - lower[j + 1] * sol[j + 1]) / diag[j];
            for (int j = 0; j < m; ++j) {
                const int f = k + j;
                double v = sol[j];
                if (v > lambda) {
                    v = lambda;
                    state[f] = 1;
                    round_changed = true;
                } else if (v < -lambda) {
                    v = -lambda;
                    state[f] = -1;
                    round_changed = true;
                }
                if (z[f] != v) changed = true;
                z[f] = v;
            }
            k = kend;
        }
        if (round_changed) continue; // re-solve with the grown active set

        // multiplier sign check: release active faces pushed off the bound
        std::vector<double> u(geo.n);
        compute_u(geo, g, z, u);
        bool released = false;
        for (int f = 1; f < n; ++f) {
            const double du = u[f] - u[f - 1];
            if (state[f] == 1 && du < -sign_eps) {
                state[f] = 0;
                released = true;
            } else if (state[f] == -1 && du > sign_eps) {
                state[f] = 0;
                released = true;
            }
        }
        if (!released) return changed;
        changed = true;
    }
    return changed;
}

} // namespace radial_detail

inline RadialSolveResult try_solve_radial_dual(const RadialProfile& g,
                                               const RadialSolverConfig& cfg,
                                               const RadialDual* warm = nullptr) {
    cfg.validate();
    validate(g);
    const int n = g.n;
    radial_detail::Geometry geo(g.R, n, g.dim);
    const double lambda = cfg.lambda;
    const double scale = std::max(1.0, g.max_abs());

    RadialSolveResult res;
    res.z = RadialDual(g.R, n, g.dim, lambda);
    res.u = g;

    if (lambda == 0.0 || n == 1) {
        res.converged = true;
        return res;
    }

    std::vector<double> z(n + 1, 0.0);
    if (warm && warm->n == n && warm->dim == g.dim) {
        z = warm->values;
        for (double& v : z) v = std::clamp(v, -lambda, lambda);
        z[0] = z[n] = 0.0;
    }

    const std::vector<double> step = radial_detail::face_steps(geo);
    std::vector<double> y = z, z_prev = z, u(n), grad(n + 1, 0.0);
    double t_acc = 1.0;

    long it = 0;
    bool converged = false;
    double kkt = std::numeric_limits<double>::infinity();
    const double sign_eps = 0.25 * cfg.tol * scale;

    auto try_finish = [&]() {
        radial_detail::compute_u(geo, g, z, u);
        kkt = radial_detail::kkt_residual(geo, z, u, lambda) / scale;
        if (kkt <= cfg.tol) return true;
        if (cfg.polish) {
            const std::vector<double> z_before = z;
            radial_detail::polish_pass(geo, g, lambda, z, sign_eps);
            radial_detail::compute_u(geo, g, z, u);
            const double kkt_after = radial_detail::kkt_residual(geo, z, u, lambda) / scale;
            if (kkt_after <= kkt) {
                kkt = kkt_after;
            } else {
                z = z_before; // polish from a far state can thrash; keep the better point
                radial_detail::compute_u(geo, g, z, u);
            }
            if (kkt <= cfg.tol) return true;
        }
        return false;
    };

    for (; it < cfg.max_iters; ++it) {
        radial_detail::compute_u(geo, g, y, u);
        for (int k = 1; k < n; ++k) grad[k] = 2.0 * geo.a[k] * (u[k - 1] - u[k]);

        z_prev.swap(z);
        double restart_dot = 0.0;
        for (int k = 1; k < n; ++k) {
            const double zk = std::clamp(y[k] - step[k] * grad[k], -lambda, lambda);
            restart_dot += (y[k] - zk) * (zk - z_prev[k]) / step[k];
            z[k] = zk;
        }
        if (restart_dot > 0.0) t_acc = 1.0;
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
        const double beta = (t_acc - 1.0) / t_next;
        for (int k = 1; k < n; ++k) y[k] = z[k] + beta * (z[k] - z_prev[k]);
        t_acc = t_next;

        if ((it + 1) % cfg.check_interval == 0 && try_finish()) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged) converged = try_finish();

    res.z.values = std::move(z);
    res.z.values[0] = res.z.values[n] = 0.0;
    radial_detail::compute_u(geo, g, res.z.values, res.u.values);
    res.kkt_residual = kkt;
    res.iters = it;
    res.converged = converged;
    return res;
}

inline RadialSolveResult solve_radial_dual(const RadialProfile& g, const RadialSolverConfig& cfg,
                                           const RadialDual* warm = nullptr) {
    RadialSolveResult r = try_solve_radial_dual(g, cfg, warm);
    if (!r.converged)
        throw NonConvergence("solve_radial_dual: max_iters reached before tolerance", r.iters,
                             r.kkt_residual);
    return r;
}

// Resolvent operator T_lambda: datum -> minimizer.
inline RadialProfile resolvent(const RadialProfile& g, double lambda,
                               const RadialSolverConfig& proto = {}) {
    RadialSolverConfig cfg = proto;
    cfg.lambda = lambda;
    return solve_radial_dual(g, cfg).u;
}

struct ComparisonReport {
    double max_comparison_violation = 0.0; // max over faces of (z_mu - mu) - (z_lambda - lambda)
    double lipschitz_gap = 0.0;            // max|z_lambda - z_mu| - |lambda - mu|
};

// Checks z_lambda - lambda >= z_mu - mu facewise and the sup-norm Lipschitz
// bound |z_lambda - z_mu| <= |lambda - mu| for lambda < mu.
inline ComparisonReport comparison_check(const RadialProfile& g, double lambda, double mu,
                                         const RadialSolverConfig& proto = {}) {
    if (lambda > mu) std::swap(lambda, mu);
    RadialSolverConfig c1 = proto, c2 = proto;
    c1.lambda = lambda;
    c2.lambda = mu;
    const RadialSolveResult a = solve_radial_dual(g, c1);
    const RadialSolveResult b = solve_radial_dual(g, c2);
    ComparisonReport rep;
    double max_diff = 0.0;
    for (int k = 0; k <= g.n; ++k) {
        rep.max_comparison_violation = std::max(
            rep.max_comparison_violation,
            (b.z.values[k] - mu) - (a.z.values[k] - lambda));
        max_diff = std::max(max_diff, std::abs(a.z.values[k] - b.z.values[k]));
    }
    rep.lipschitz_gap = max_diff - std::abs(lambda - mu);
    return rep;
}

// Semigroup defect || T_mu(g) - T_{mu-lambda}(T_lambda(g)) ||_2 (weighted).
inline double semigroup_defect(const RadialProfile& g, double lambda, double mu,
                               const RadialSolverConfig& proto = {}) {
    if (!(mu > lambda)) throw BadInput("semigroup_defect: need mu > lambda");
    const RadialProfile direct = resolvent(g, mu, proto);
    const RadialProfile staged = resolvent(resolvent(g, lambda, proto), mu - lambda, proto);
    return dist_l2(direct, staged);
}

// Faces where the constraint is strictly slack: |z| < bound*(1 - sat_tol).
inline std::vector<std::uint8_t> slack_faces(const RadialDual& z, double sat_tol) {
    std::vector<std::uint8_t> s(z.values.size(), 0);
    for (std::size_t k = 0; k < z.values.size(); ++k)
        s[k] = std::abs(z.values[k]) < z.bound * (1.0 - sat_tol) ? 1 : 0;
    return s;
}

} // namespace tvsc
