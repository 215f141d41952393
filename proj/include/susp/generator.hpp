#pragma once

#include "susp/grid.hpp"
#include "susp/newton.hpp"
#include "susp/smallvec.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace susp {

/// Perturbation term V of a generating function W(x', y) = <x', y> + V(x', y)
/// on R^{2m}, m = d-1.  The construction needs the gradient and Hessian of V
/// as first-class evaluators; the scalar value is optional (fitted
/// perturbations reconstruct the gradient only).
///
/// delta1 is the measured discrete C^1 size of grad V over the ball of
/// radius rho; every implicit solve downstream is a contraction when
/// delta1 < 1/2, and constructors of dependent objects enforce that margin.
struct GeneratingPerturbation {
    std::size_t dim = 2;     // 2(d-1)
    double rho = 1.0;        // support radius
    double delta1 = 0.0;     // measured C^1 size of grad V
    bool compact = true;     // whether grad V vanishes outside the rho-ball
    std::string family = "custom";

    /// Radii at which the radial smoothness regime of V changes (cutoff
    /// plateau edge, support edge).  Quadratures along rays split their
    /// interval at these radii so each piece is free of boundary layers.
    Vec smooth_breaks;

    std::function<double(const Vec&)> value; // may be empty
    std::function<Vec(const Vec&)> grad;
    std::function<Mat(const Vec&)> hess;

    bool has_value() const { return static_cast<bool>(value); }
};

/// Measures the discrete C^1 size of grad V on the ball of radius rho.
/// The lattice resolution drops with dimension to keep the sweep affordable;
/// the measurement is deterministic for a given dimension and radius.
double measure_delta1(const std::function<Vec(const Vec&)>& grad, std::size_t dim, double rho);

/// Wraps evaluators into a perturbation, measuring delta1.
GeneratingPerturbation make_perturbation(std::size_t dim, double rho,
                                         std::function<double(const Vec&)> value,
                                         std::function<Vec(const Vec&)> grad,
                                         std::function<Mat(const Vec&)> hess, bool compact,
                                         std::string family = "custom");

/// V = eps * <x', y>.  A global test chart: all derived quantities have
/// closed forms, but grad V does not vanish at infinity, so it exercises
/// the pipeline without the support cutoff.  delta1 = eps * max(rho, 1).
GeneratingPerturbation make_linear_shear(std::size_t d, double eps, double rho = 1.0);

/// V proportional to sum_i (x_i'^3/3 + x_i' y_i^2) * cutoff(|z|), compactly
/// supported in the rho-ball and fixing the origin, scaled so the measured
/// delta1 equals eps.  The scaling keeps eps comparable across families and
/// keeps the admissibility gate a statement about eps itself rather than
/// about the cutoff's derivative tails.
GeneratingPerturbation make_cubic(std::size_t d, double eps, double rho = 1.0);

/// Seeded random polynomial of degree <= 4 times the same cutoff.  The raw
/// coefficient scale of a random draw carries no meaning, so the polynomial
/// is rescaled to make the measured delta1 equal eps exactly; identical
/// (d, rho, seed) give identical coefficients.
GeneratingPerturbation make_random_poly(std::size_t d, double eps, double rho, std::uint64_t seed);

/// Builds the named family ("linear-shear", "cubic", "random-poly").
GeneratingPerturbation make_family(const std::string& family, std::size_t d, double eps,
                                   double rho, std::uint64_t seed);

/// The symplectic map generated by W = <x', y> + V: given z = (x, y), solves
/// x = x' + dV/dy(x', y) for x' by Newton iteration and returns
/// (x', y + dV/dx'(x', y)).  Requires delta1 < 1/2.
Vec map_from_generator(const GeneratingPerturbation& pert, const Vec& z,
                       const NewtonSettings& settings = {1e-13, 50, 1e-7});

/// Recovers a generating perturbation from a black-box symplectic map that
/// is C^1-close to the identity.  Validates symplecticity of g on sample
/// points of `domain` (InvalidMapError beyond tolerance 1e-4) and measures
/// the fitted delta1 (ContractionViolationError at or above 1/2).
///
/// The returned gradient evaluator inverts the first component of g on
/// demand: grad V(x', y) = J (g(x,y) - (x,y)) where x solves
/// pi_1 g(x, y) = x'.  The Hessian is a central difference of the gradient.
GeneratingPerturbation fit_generating_gradient(const std::function<Vec(const Vec&)>& g,
                                               double rho, const GridDomain& domain);

} // namespace susp
