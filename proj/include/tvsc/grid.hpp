#pragma once

// Uniform 2-D grids, forward/backward difference operators with Neumann
// closure, and the discrete total-variation functionals. The gradient and
// divergence below are exact negative adjoints of one another, which the
// rest of the library relies on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "tvsc/errors.hpp"

namespace tvsc {

enum class TvKind { isotropic, anisotropic };

inline const char* to_string(TvKind k) {
    return k == TvKind::isotropic ? "isotropic" : "anisotropic";
}

// 2-D scalar field on a uniform grid with spacing h > 0.
// Row-major storage: value at column x, row y sits at index y*width + x.
struct GridImage {
    int width = 0;
    int height = 0;
    double h = 1.0;
    std::vector<double> values;

    GridImage() = default;
    GridImage(int w, int ht, double spacing, double fill = 0.0)
        : width(w), height(ht), h(spacing),
          values(static_cast<std::size_t>(w < 1 ? 0 : w) * (ht < 1 ? 0 : ht), fill) {
        if (w < 1 || ht < 1 || !(spacing > 0.0))
            throw BadInput("GridImage: need width >= 1, height >= 1, h > 0");
    }

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    double operator()(int x, int y) const { return values[idx(x, y)]; }
    double& operator()(int x, int y) { return values[idx(x, y)]; }
    std::size_t size() const { return values.size(); }

    double pixel_area() const { return h * h; }

    double min_value() const { return *std::min_element(values.begin(), values.end()); }
    double max_value() const { return *std::max_element(values.begin(), values.end()); }
    double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
    double mean() const { return sum() / static_cast<double>(size()); }
    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double oscillation() const { return max_value() - min_value(); }

    bool same_shape(const GridImage& o) const {
        return width == o.width && height == o.height && h == o.h;
    }
    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void validate(const GridImage& g) {
    if (g.width < 1 || g.height < 1 || !(g.h > 0.0))
        throw BadInput("GridImage: invalid shape");
    if (g.values.size() != static_cast<std::size_t>(g.width) * g.height)
        throw BadInput("GridImage: value count does not match width*height");
    if (!g.all_finite()) throw BadInput("GridImage: non-finite values");
}

// Vector field on the grid (x- and y-components per pixel) with a pointwise
// norm bound. For isotropic TV the bound constrains the Euclidean norm, for
// anisotropic TV each component separately.
struct DualField {
    int width = 0;
    int height = 0;
    double h = 1.0;
    double bound = 0.0;
    std::vector<double> x, y;

    DualField() = default;
    DualField(int w, int ht, double spacing, double b)
        : width(w), height(ht), h(spacing), bound(b),
          x(static_cast<std::size_t>(w) * ht, 0.0), y(static_cast<std::size_t>(w) * ht, 0.0) {}

    std::size_t idx(int cx, int cy) const { return static_cast<std::size_t>(cy) * width + cx; }
    std::size_t size() const { return x.size(); }

    double max_iso_norm() const {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            m = std::max(m, std::sqrt(x[i] * x[i] + y[i] * y[i]));
        return m;
    }
    double max_aniso_norm() const {
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            m = std::max(m, std::max(std::abs(x[i]), std::abs(y[i])));
        return m;
    }
    double max_norm(TvKind kind) const {
        return kind == TvKind::isotropic ? max_iso_norm() : max_aniso_norm();
    }
    bool feasible(TvKind kind, double slack = 1e-9) const {
        return max_norm(kind) <= bound * (1.0 + slack) + slack * 1e-6;
    }
};

// Forward differences divided by h; last column/row difference is zero
// (Neumann closure). Returned field is unconstrained (bound = inf).
inline DualField gradient(const GridImage& u) {
    DualField p(u.width, u.height, u.h, std::numeric_limits<double>::infinity());
    const double inv_h = 1.0 / u.h;
    for (int y = 0; y < u.height; ++y) {
        for (int x = 0; x < u.width; ++x) {
            const std::size_t i = u.idx(x, y);
            p.x[i] = (x + 1 < u.width) ? (u.values[i + 1] - u.values[i]) * inv_h : 0.0;
            p.y[i] = (y + 1 < u.height) ? (u.values[i + u.width] - u.values[i]) * inv_h : 0.0;
        }
    }
    return p;
}

// Backward differences, the exact negative adjoint of gradient(). The dual
// field's normal component on the boundary is treated as zero, so the sum of
// the divergence over the grid telescopes to zero.
inline GridImage divergence(const DualField& p) {
    GridImage d(p.width, p.height, p.h, 0.0);
    const double inv_h = 1.0 / p.h;
    for (int y = 0; y < p.height; ++y) {
        for (int x = 0; x < p.width; ++x) {
            const std::size_t i = p.idx(x, y);
            double vx;
            if (x == 0) vx = p.x[i];
            else if (x == p.width - 1) vx = -p.x[i - 1];
            else vx = p.x[i] - p.x[i - 1];
            double vy;
            if (y == 0) vy = p.y[i];
            else if (y == p.height - 1) vy = -p.y[i - p.width];
            else vy = p.y[i] - p.y[i - p.width];
            d.values[i] = (vx + vy) * inv_h;
        }
    }
    return d;
}

// TV functionals on raw forward differences: tv_iso = h * sum sqrt(dx^2+dy^2),
// tv_aniso = h * sum (|dx| + |dy|). Both vanish exactly iff u is constant.
inline double tv_iso(const GridImage& u) {
    double s = 0.0;
    for (int y = 0; y < u.height; ++y) {
        for (int x = 0; x < u.width; ++x) {
            const std::size_t i = u.idx(x, y);
            const double dx = (x + 1 < u.width) ? u.values[i + 1] - u.values[i] : 0.0;
            const double dy = (y + 1 < u.height) ? u.values[i + u.width] - u.values[i] : 0.0;
            s += std::sqrt(dx * dx + dy * dy);
        }
    }
    return u.h * s;
}

inline double tv_aniso(const GridImage& u) {
    double s = 0.0;
    for (int y = 0; y < u.height; ++y) {
        for (int x = 0; x < u.width; ++x) {
            const std::size_t i = u.idx(x, y);
            if (x + 1 < u.width) s += std::abs(u.values[i + 1] - u.values[i]);
            if (y + 1 < u.height) s += std::abs(u.values[i + u.width] - u.values[i]);
        }
    }
    return u.h * s;
}

inline double tv(const GridImage& u, TvKind kind) {
    return kind == TvKind::isotropic ? tv_iso(u) : tv_aniso(u);
}

// h^2-weighted inner product and norms (discrete L^2 on the grid).
inline double dot(const GridImage& a, const GridImage& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
    return s * a.h * a.h;
}

inline double norm_l2(const GridImage& a) { return std::sqrt(dot(a, a)); }

inline double dist_l2(const GridImage& a, const GridImage& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return std::sqrt(s) * a.h;
}

inline double dist_inf(const GridImage& a, const GridImage& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

// Pairing of a dual field with a gradient field, sum z.p * h^2.
inline double dot(const DualField& z, const DualField& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.x.size(); ++i) s += z.x[i] * p.x[i] + z.y[i] * p.y[i];
    return s * z.h * z.h;
}

// Binary mask on the grid together with its level and (lazily computed)
// anisotropic perimeter = boundary-edge count * h. Domain-border edges do
// not count: the perimeter is relative to the open domain.
struct LevelSet {
    int width = 0;
    int height = 0;
    double h = 1.0;
    double level = 0.0;
    std::vector<std::uint8_t> mask;

    LevelSet() = default;
    LevelSet(int w, int ht, double spacing, double t)
        : width(w), height(ht), h(spacing), level(t),
          mask(static_cast<std::size_t>(w) * ht, 0) {}

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }

    double area() const {
        std::size_t c = 0;
        for (auto m : mask) c += (m != 0);
        return static_cast<double>(c) * h * h;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto m : mask) c += (m != 0);
        return c;
    }
    bool empty() const { return count() == 0; }

    double perimeter() const {
        if (perim_ < 0.0) {
            std::size_t edges = 0;
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x) {
                    const std::size_t i = idx(x, y);
                    if (x + 1 < width && mask[i] != mask[i + 1]) ++edges;
                    if (y + 1 < height && mask[i] != mask[i + width]) ++edges;
                }
            perim_ = static_cast<double>(edges) * h;
        }
        return perim_;
    }

    // Perimeter of the pixel set as a subset of the plane: domain-border
    // edges count. This is the shape's boundary length, not the relative
    // perimeter the cut functional prices.
    double full_perimeter() const {
        std::size_t edges = 0;
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                if (!mask[idx(x, y)]) continue;
                if (x == 0 || !mask[idx(x - 1, y)]) ++edges;
                if (x == width - 1 || !mask[idx(x + 1, y)]) ++edges;
                if (y == 0 || !mask[idx(x, y - 1)]) ++edges;
                if (y == height - 1 || !mask[idx(x, y + 1)]) ++edges;
            }
        return static_cast<double>(edges) * h;
    }

    bool subset_of(const LevelSet& other) const {
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i] && !other.mask[i]) return false;
        return true;
    }

private:
    mutable double perim_ = -1.0;
};

// Superlevel set {u > t}.
inline LevelSet level_set(const GridImage& u, double t) {
    LevelSet e(u.width, u.height, u.h, t);
    for (std::size_t i = 0; i < u.values.size(); ++i) e.mask[i] = u.values[i] > t ? 1 : 0;
    return e;
}

} // namespace tvsc
