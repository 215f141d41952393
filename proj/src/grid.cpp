#include "susp/grid.hpp"

#include "susp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace susp {
namespace {

// One-dimensional central stencils, offsets in units of the step.
struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights; // before division by h^order
};

const Stencil& stencil_for(int order) {
    static const Stencil s0{{0}, {1.0}};
    static const Stencil s1{{-1, 1}, {-0.5, 0.5}};
    static const Stencil s2{{-1, 0, 1}, {1.0, -2.0, 1.0}};
    static const Stencil s3{{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    switch (order) {
        case 0: return s0;
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw ResolutionError("cs_norm", "no central stencil beyond order 3");
    }
}

void walk(const GridDomain& domain, std::size_t axis, Vec& point, double r2,
          const std::function<void(const Vec&)>& fn) {
    if (axis == domain.dim) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < domain.dim; ++i) {
            const double d = point[i] - domain.center[i];
            d2 += d * d;
        }
        if (d2 <= r2 * (1.0 + 1e-12)) fn(point);
        return;
    }
    const std::size_t n = domain.points_per_axis;
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
        point[axis] = domain.center[axis] - domain.radius + 2.0 * domain.radius * frac;
        walk(domain, axis + 1, point, r2, fn);
    }
}

void collect_indices(std::size_t dim, std::size_t axis, int remaining, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
    if (axis == dim) {
        out.push_back(current);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        current[axis] = k;
        collect_indices(dim, axis + 1, remaining - k, current, out);
    }
    current[axis] = 0;
}

} // namespace

GridDomain make_grid(std::size_t dim, Vec center, double radius, std::size_t points_per_axis,
                     double fd_step) {
    if (dim == 0 || dim > kMaxDim) throw Error("make_grid", "dimension must be in 1..8");
    if (center.size() != dim) throw Error("make_grid", "center size does not match dimension");
    if (!(radius > 0.0)) throw Error("make_grid", "radius must be positive");
    if (points_per_axis == 0) throw Error("make_grid", "points_per_axis must be positive");
    GridDomain g;
    g.dim = dim;
    g.center = std::move(center);
    g.radius = radius;
    g.points_per_axis = points_per_axis;
    g.fd_step = fd_step;
    return g;
}

void for_each_grid_point(const GridDomain& domain, const std::function<void(const Vec&)>& fn) {
    Vec point = zeros(domain.dim);
    walk(domain, 0, point, domain.radius * domain.radius, fn);
}

std::vector<Vec> grid_points(const GridDomain& domain) {
    std::vector<Vec> pts;
    for_each_grid_point(domain, [&](const Vec& p) { pts.push_back(p); });
    return pts;
}

std::vector<std::vector<int>> multi_indices(std::size_t dim, int max_order) {
    // The budgeted recursion emits each index with |sigma| <= max_order
    // exactly once, zero index first.
    std::vector<std::vector<int>> out;
    std::vector<int> current(dim, 0);
    collect_indices(dim, 0, max_order, current, out);
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int sa = 0, sb = 0;
        for (int k : a) sa += k;
        for (int k : b) sb += k;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

double cs_norm(const std::function<Vec(const Vec&)>& f, const GridDomain& domain, int order) {
    if (order < 0 || order > 3)
        throw ResolutionError("cs_norm", "derivative order must be in 0..3");

    double h = domain.fd_step;
    if (h <= 0.0) h = (order <= 1 ? 1e-3 : 1e-2) * domain.radius;
    if (h > domain.radius / static_cast<double>(domain.points_per_axis))
        throw ResolutionError("cs_norm", "FD step exceeds radius / points_per_axis");

    const auto indices = multi_indices(domain.dim, order);

    double best = 0.0;
    Vec probe = zeros(domain.dim);
    for_each_grid_point(domain, [&](const Vec& p) {
        for (const auto& sigma : indices) {
            int total = 0;
            for (int k : sigma) total += k;

            // Tensor product of the per-axis stencils: iterate all offset
            // combinations, accumulating weight products.
            std::vector<std::size_t> cursor(domain.dim, 0);
            bool acc_initialized = false;
            Vec acc;
            while (true) {
                double weight = 1.0;
                probe = p;
                for (std::size_t ax = 0; ax < domain.dim; ++ax) {
                    const Stencil& st = stencil_for(sigma[ax]);
                    weight *= st.weights[cursor[ax]];
                    probe[ax] += h * st.offsets[cursor[ax]];
                }
                const Vec fv = f(probe);
                if (!acc_initialized) {
                    acc = zeros(fv.size());
                    acc_initialized = true;
                }
                for (std::size_t c = 0; c < fv.size(); ++c) acc[c] += weight * fv[c];

                std::size_t ax = 0;
                for (; ax < domain.dim; ++ax) {
                    const Stencil& st = stencil_for(sigma[ax]);
                    if (++cursor[ax] < st.offsets.size()) break;
                    cursor[ax] = 0;
                }
                if (ax == domain.dim) break;
            }

            const double scale = std::pow(h, -static_cast<double>(total));
            for (double component : acc) best = std::max(best, std::abs(component) * scale);
        }
    });
    return best;
}

double cs_norm_scalar(const std::function<double(const Vec&)>& f, const GridDomain& domain,
                      int order) {
    return cs_norm(
        [&f](const Vec& z) {
            Vec out;
            out.push_back(f(z));
            return out;
        },
        domain, order);
}

} // namespace susp
