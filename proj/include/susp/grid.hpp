#pragma once

#include "susp/smallvec.hpp"

#include <functional>
#include <vector>

namespace susp {

/// Sampling domain: the closed ball of radius `radius` around `center`,
/// discretized by a lattice with `points_per_axis` points per axis.
///
/// `fd_step` is the finite-difference step used by cs_norm on this domain;
/// leave it at 0 to pick the default for the requested derivative order
/// (1e-3 * radius for first derivatives, 1e-2 * radius beyond, where the
/// larger step keeps round-off noise out of the higher differences).
struct GridDomain {
    std::size_t dim = 2;
    Vec center;
    double radius = 1.0;
    std::size_t points_per_axis = 11;
    double fd_step = 0.0;
};

GridDomain make_grid(std::size_t dim, Vec center, double radius, std::size_t points_per_axis,
                     double fd_step = 0.0);

/// Calls fn for every lattice point inside the closed ball.
void for_each_grid_point(const GridDomain& domain, const std::function<void(const Vec&)>& fn);

std::vector<Vec> grid_points(const GridDomain& domain);

/// Discrete C^s norm of a sampled map F : R^dim -> R^m, s in 0..3:
/// the maximum over grid points, output components and multi-indices
/// |sigma| <= s of the central finite-difference estimate of the partial
/// derivative D^sigma F_i.
///
/// Throws ResolutionError if s is outside 0..3 or the step violates
/// fd_step <= radius / points_per_axis.
double cs_norm(const std::function<Vec(const Vec&)>& f, const GridDomain& domain, int order);

/// Scalar convenience overload.
double cs_norm_scalar(const std::function<double(const Vec&)>& f, const GridDomain& domain,
                      int order);

/// All multi-indices over `dim` variables with 1 <= |sigma| <= max_order,
/// plus the zero index first.  Exposed for tests.
std::vector<std::vector<int>> multi_indices(std::size_t dim, int max_order);

} // namespace susp
