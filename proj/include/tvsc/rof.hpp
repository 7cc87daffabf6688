#pragma once

// Minimization of the ROF energy
//   E(u) = lambda * TV(u) + 1/2 ||u - g||^2
// on a 2-D grid through its dual: accelerated projected gradient (step from
// the operator-norm bound ||grad||^2 <= 8/h^2, adaptive restart) on
//   min_{|z| <= lambda} 1/2 ||div z + g||^2,
// with exact primal recovery u = g + div z. The returned pair satisfies the
// optimality equation -div z + u = g identically and |z| <= lambda by
// projection; convergence is certified by the complementarity defect
// lambda*TV(u) - <z, grad u>, which equals the duality gap and therefore
// bounds the energy suboptimality. Checkpoints accept a state only when its
// energy does not increase, so the logged energy sequence is non-increasing
// and the solver never returns a worse iterate than it has already seen.

#include <cmath>
#include <limits>
#include <vector>

#include "tvsc/errors.hpp"
#include "tvsc/grid.hpp"

namespace tvsc {

struct SolverConfig {
    double lambda = 0.1;
    long max_iters = 400000;
    double tol = 1e-6;             // relative primal change and EL-system residual target
    TvKind tv_kind = TvKind::isotropic;
    int check_interval = 32;
    bool log_energy = false;

    void validate() const {
        if (!(lambda > 0.0)) throw BadInput("SolverConfig: lambda must be > 0");
        if (!(tol > 0.0)) throw BadInput("SolverConfig: tol must be > 0");
        if (max_iters < 1) throw BadInput("SolverConfig: max_iters must be >= 1");
    }
};

struct SolveResult {
    GridImage u;
    DualField z;                   // bound = lambda, feasible even on non-convergence
    double energy = 0.0;
    double el_residual = 0.0;      // max|-div z + u - g| / max(1, max|g|)
    double complementarity = 0.0;  // lambda*tv(u) - <z, grad u> (duality gap)
    long iters = 0;
    bool converged = false;
    std::vector<double> energy_log; // checkpoint energies (non-increasing), if requested
};

inline double rof_energy(const GridImage& g, const GridImage& u, double lambda, TvKind kind) {
    double fid = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double d = u.values[i] - g.values[i];
        fid += d * d;
    }
    return lambda * tv(u, kind) + 0.5 * fid * g.h * g.h;
}

namespace detail {

inline void project_dual(std::vector<double>& zx, std::vector<double>& zy, double lambda,
                         TvKind kind) {
    if (kind == TvKind::isotropic) {
        for (std::size_t i = 0; i < zx.size(); ++i) {
            const double n = std::sqrt(zx[i] * zx[i] + zy[i] * zy[i]);
            if (n > lambda) {
                const double s = lambda / n;
                zx[i] *= s;
                zy[i] *= s;
            }
        }
    } else {
        for (std::size_t i = 0; i < zx.size(); ++i) {
            zx[i] = std::clamp(zx[i], -lambda, lambda);
            zy[i] = std::clamp(zy[i], -lambda, lambda);
        }
    }
}

inline double el_residual_inf(const GridImage& g, const GridImage& u, const DualField& z) {
    const GridImage d = divergence(z);
    double m = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        m = std::max(m, std::abs(-d.values[i] + u.values[i] - g.values[i]));
    return m / std::max(1.0, g.max_abs());
}

// lambda*tv(u) - <z, grad u>; nonnegative for feasible z.
inline double complementarity_defect(const GridImage& u, const DualField& z, double lambda,
                                     TvKind kind) {
    const DualField gu = gradient(u);
    return lambda * tv(u, kind) - dot(z, gu);
}

} // namespace detail

// Returns the result with converged flag set instead of throwing; z is
// feasible in every case (it is projected at each iteration).
inline SolveResult try_solve_rof(const GridImage& g, const SolverConfig& cfg,
                                 const SolveResult* warm = nullptr) {
    cfg.validate();
    validate(g);
    const int W = g.width, H = g.height;
    const std::size_t n = g.size();
    const double h = g.h;
    const double lambda = cfg.lambda;
    const double inv_h = 1.0 / h;
    const double step = h * h / 8.0;
    const double scale = std::max(1.0, g.max_abs());

    std::vector<double> zx(n, 0.0), zy(n, 0.0);
    if (warm && warm->z.width == W && warm->z.height == H) {
        zx = warm->z.x;
        zy = warm->z.y;
        detail::project_dual(zx, zy, lambda, cfg.tv_kind);
    }
    std::vector<double> yx = zx, yy = zy, px = zx, py = zy;
    std::vector<double> resid(n); // div y + g
    double t_acc = 1.0;

    DualField z_acc(W, H, h, lambda);
    z_acc.x = zx;
    z_acc.y = zy;
    GridImage u_acc(W, H, h);
    {
        DualField ztmp = z_acc;
        const GridImage dz = divergence(ztmp);
        for (std::size_t i = 0; i < n; ++i) u_acc.values[i] = g.values[i] + dz.values[i];
    }
    double e_acc = rof_energy(g, u_acc, lambda, cfg.tv_kind);
    GridImage u_prev = u_acc;
    std::vector<double> elog;
    if (cfg.log_energy) elog.push_back(e_acc);

    long it = 0;
    bool converged = false;
    double defect = std::numeric_limits<double>::infinity();
    for (; it < cfg.max_iters; ++it) {
        // residual of the extrapolated dual point
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                const std::size_t i = g.idx(x, y);
                double vx;
                if (x == 0) vx = yx[i];
                else if (x == W - 1) vx = -yx[i - 1];
                else vx = yx[i] - yx[i - 1];
                double vy;
                if (y == 0) vy = yy[i];
                else if (y == H - 1) vy = -yy[i - W];
                else vy = yy[i] - yy[i - W];
                resid[i] = (vx + vy) * inv_h + g.values[i];
            }
        // gradient step z = proj(y + step * grad resid) and restart test
        px.swap(zx);
        py.swap(zy);
        double restart_dot = 0.0;
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W; ++x) {
                const std::size_t i = g.idx(x, y);
                const double gx =
                    (x + 1 < W) ? (resid[i + 1] - resid[i]) * inv_h : 0.0;
                const double gy =
                    (y + 1 < H) ? (resid[i + W] - resid[i]) * inv_h : 0.0;
                zx[i] = yx[i] + step * gx;
                zy[i] = yy[i] + step * gy;
            }
        detail::project_dual(zx, zy, lambda, cfg.tv_kind);
        for (std::size_t i = 0; i < n; ++i)
            restart_dot += (yx[i] - zx[i]) * (zx[i] - px[i]) + (yy[i] - zy[i]) * (zy[i] - py[i]);
        if (restart_dot > 0.0) t_acc = 1.0;
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
        const double beta = (t_acc - 1.0) / t_next;
        for (std::size_t i = 0; i < n; ++i) {
            yx[i] = zx[i] + beta * (zx[i] - px[i]);
            yy[i] = zy[i] + beta * (zy[i] - py[i]);
        }
        t_acc = t_next;

        if ((it + 1) % cfg.check_interval != 0) continue;

        // candidate state u = g + div z
        DualField zc(W, H, h, lambda);
        zc.x = zx;
        zc.y = zy;
        const GridImage dz = divergence(zc);
        GridImage uc(W, H, h);
        for (std::size_t i = 0; i < n; ++i) uc.values[i] = g.values[i] + dz.values[i];
        const double ec = rof_energy(g, uc, lambda, cfg.tv_kind);
        if (ec <= e_acc * (1.0 + 1e-12) + 1e-300) {
            u_prev.values.swap(u_acc.values);
            u_acc = std::move(uc);
            z_acc = std::move(zc);
            e_acc = std::min(e_acc, ec);
            if (cfg.log_energy) elog.push_back(e_acc);
            double du = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                du = std::max(du, std::abs(u_acc.values[i] - u_prev.values[i]));
            defect = detail::complementarity_defect(u_acc, z_acc, lambda, cfg.tv_kind);
            const double defect_cap = cfg.tol * std::max(1.0, lambda * tv(u_acc, cfg.tv_kind));
            if (du / scale <= cfg.tol && defect <= defect_cap) {
                converged = true;
                ++it;
                break;
            }
        } else if (cfg.log_energy) {
            elog.push_back(e_acc);
        }
    }

    SolveResult r;
    r.u = std::move(u_acc);
    r.z = std::move(z_acc);
    r.energy = e_acc;
    r.el_residual = detail::el_residual_inf(g, r.u, r.z);
    r.complementarity =
        defect == std::numeric_limits<double>::infinity()
            ? detail::complementarity_defect(r.u, r.z, lambda, cfg.tv_kind)
            : defect;
    r.iters = it;
    r.converged = converged;
    r.energy_log = std::move(elog);
    return r;
}

inline SolveResult solve_rof(const GridImage& g, const SolverConfig& cfg,
                             const SolveResult* warm = nullptr) {
    SolveResult r = try_solve_rof(g, cfg, warm);
    if (!r.converged)
        throw NonConvergence("solve_rof: max_iters reached before tolerance", r.iters,
                             r.complementarity);
    return r;
}

// Report on the discrete optimality system for a (u, z) pair.
struct ElReport {
    double residual = 0.0;              // max|-div z + u - g| / max(1, max|g|)
    double feasibility_margin = 0.0;    // max|z| - lambda (<= 0 when feasible)
    double complementarity_defect = 0.0; // lambda*tv(u) - <z, grad u>, always >= -eps
    double defect_bound = 0.0;          // tol * lambda * tv(u) reference value
};

inline ElReport el_certificate(const GridImage& g, const SolveResult& res,
                               const SolverConfig& cfg) {
    ElReport rep;
    rep.residual = detail::el_residual_inf(g, res.u, res.z);
    rep.feasibility_margin = res.z.max_norm(cfg.tv_kind) - cfg.lambda;
    rep.complementarity_defect =
        detail::complementarity_defect(res.u, res.z, cfg.lambda, cfg.tv_kind);
    rep.defect_bound = cfg.tol * cfg.lambda * tv(res.u, cfg.tv_kind);
    return rep;
}

namespace detail {

inline GridImage coarsen2(const GridImage& g) {
    GridImage c(g.width / 2, g.height / 2, g.h * 2.0);
    for (int y = 0; y < c.height; ++y)
        for (int x = 0; x < c.width; ++x)
            c(x, y) = 0.25 * (g(2 * x, 2 * y) + g(2 * x + 1, 2 * y) + g(2 * x, 2 * y + 1) +
                              g(2 * x + 1, 2 * y + 1));
    return c;
}

inline DualField prolong2(const DualField& zc, int W, int H, double h) {
    DualField z(W, H, h, zc.bound);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const int cx = std::min(x / 2, zc.width - 1);
            const int cy = std::min(y / 2, zc.height - 1);
            z.x[z.idx(x, y)] = zc.x[zc.idx(cx, cy)];
            z.y[z.idx(x, y)] = zc.y[zc.idx(cx, cy)];
        }
    return z;
}

} // namespace detail

// Coarse-to-fine warm start: solve on 2x2-averaged grids first and prolong
// the dual field. Each level runs the same certified solver; the returned
// certificate is the finest level's. Worthwhile from ~128^2 upward.
inline SolveResult solve_rof_cascade(const GridImage& g, const SolverConfig& cfg,
                                     int levels = 3) {
    if (levels <= 0 || g.width < 64 || g.height < 64 || g.width % 2 || g.height % 2)
        return solve_rof(g, cfg);
    const SolveResult coarse = solve_rof_cascade(detail::coarsen2(g), cfg, levels - 1);
    SolveResult warm;
    warm.z = detail::prolong2(coarse.z, g.width, g.height, g.h);
    return solve_rof(g, cfg, &warm);
}

// Checks the exact scale-invariance solve(a*g, a*lambda).u = a*solve(g, lambda).u
// up to combined solver tolerances. Returns the measured max-norm defect.
inline double scaling_defect(const GridImage& g, const SolverConfig& cfg, double alpha) {
    if (!(alpha > 0.0)) throw BadInput("scaling_defect: alpha must be > 0");
    const SolveResult base = solve_rof(g, cfg);
    GridImage ga = g;
    for (double& v : ga.values) v *= alpha;
    SolverConfig ca = cfg;
    ca.lambda = alpha * cfg.lambda;
    const SolveResult scaled = solve_rof(ga, ca);
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        m = std::max(m, std::abs(scaled.u.values[i] - alpha * base.u.values[i]));
    return m;
}

inline bool scaling_check(const GridImage& g, const SolverConfig& cfg, double alpha) {
    const double scale = std::max(1.0, std::abs(alpha)) * std::max(1.0, g.max_abs());
    return scaling_defect(g, cfg, alpha) <= 100.0 * std::sqrt(cfg.tol) * scale;
}

} // namespace tvsc
