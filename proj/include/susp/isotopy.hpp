#pragma once

#include "susp/bump.hpp"
#include "susp/generator.hpp"
#include "susp/newton.hpp"
#include "susp/smallvec.hpp"

namespace susp {

/// Smooth path of symplectomorphisms g_alpha on R^{2(d-1)} joining the
/// identity (alpha <= 0) to the map generated by the perturbation
/// (alpha >= xi).  Each slice is generated by ell(alpha) * V, where ell is
/// the rise profile, so the whole path stays inside the same implicit-solve
/// framework as the endpoint map.
class IsotopyFamily {
public:
    /// Throws ContractionViolationError unless pert.delta1 < 1/2: the path
    /// slices are solved by the same contraction argument as the endpoint,
    /// and ell <= 1 only shrinks the perturbation.
    IsotopyFamily(GeneratingPerturbation pert, double xi = 0.5);

    const GeneratingPerturbation& perturbation() const { return pert_; }
    double xi() const { return rise_.xi; }
    std::size_t dim() const { return pert_.dim; }

    /// Rise profile ell(alpha) and its derivatives (order 0..3).
    double ell(double alpha, int order = 0) const;

    /// g_alpha(z).  Exact identity while ell(alpha) = 0; equals the endpoint
    /// map for every alpha past the rise interval.
    Vec eval(double alpha, const Vec& z) const;

    /// g_alpha^{-1}(z'), solved by Newton iteration in the y component.
    Vec inverse(double alpha, const Vec& zp) const;

    /// d/dalpha g_alpha at a fixed base point: differentiate the implicit
    /// system for (x', y').  Exactly zero whenever ell'(alpha) = 0.
    Vec velocity(double alpha, const Vec& z) const;

    /// Generating vector field X_alpha = velocity o g_alpha^{-1} at a point
    /// of the target slice.  This is the field whose flow parameter is
    /// alpha, and it inherits the exact-zero regions of ell'.
    Vec field(double alpha, const Vec& zp) const;

private:
    GeneratingPerturbation pert_;
    BumpProfile rise_;
    NewtonSettings newton_;
};

} // namespace susp
