#pragma once

#include "susp/bump.hpp"
#include "susp/grid.hpp"
#include "susp/isotopy.hpp"
#include "susp/smallvec.hpp"

#include <cstddef>

namespace susp {

/// Tuning knobs for the quadrature and differencing inside the suspended
/// Hamiltonian.  The defaults are what every shipped experiment uses; they
/// are exposed mainly so tests can tighten or loosen one knob at a time.
struct SuspensionSettings {
    std::size_t quad_nodes = 32;   // Gauss-Legendre nodes for the line integral
    double quad_check_tol = 1e-9;  // node-doubling agreement required of K
    double alpha_fd_step = 1e-5;   // base step for d/dalpha differencing
};

/// Autonomous Hamiltonian on R^{2d} whose time-one flow realizes the
/// endpoint map of an isotopy on the section {x_d = 0, y_d = 0}.
///
/// States are ordered (x_1..x_d, y_1..y_d).  Writing z = (x_1..x_{d-1},
/// y_1..y_{d-1}) for the section part, the value is
///
///     H(Z) = y_d + K(x_d, z) * window(y_d)
///
/// where K(alpha, .) is the Hamiltonian generating the isotopy slice at
/// alpha and the window cuts the correction off in |y_d| < rho.  Outside
/// the support block the value is exactly y_d and the field is exactly
/// (0, .., 0, 1, 0, .., 0): the zero regions of the profiles are exact,
/// not merely small.
class SuspendedHamiltonian {
public:
    SuspendedHamiltonian(IsotopyFamily iso, double nu = 0.5, SuspensionSettings settings = {});

    const IsotopyFamily& isotopy() const { return iso_; }
    const BumpProfile& window() const { return window_; }
    const SuspensionSettings& settings() const { return settings_; }
    std::size_t d() const { return d_; }
    double rho() const { return window_.rho; }

    /// K(alpha, z): line-integral primitive of the slice field, so that
    /// grad K = -J X_alpha.  Evaluated by Gauss-Legendre quadrature and
    /// cross-checked against doubled nodes (QuadratureError on
    /// disagreement).  Exactly zero whenever ell'(alpha) = 0, in particular
    /// for alpha outside the rise interval.
    double slice_hamiltonian(double alpha, const Vec& z) const;

    /// d/dalpha of K at fixed z, by Richardson-extrapolated central
    /// differences.  Shares the exact-zero regions of K.
    double slice_hamiltonian_dalpha(double alpha, const Vec& z) const;

    double value(const Vec& state) const;
    Vec gradient(const Vec& state) const;

    /// Symplectic gradient J grad H: the right-hand side every integrator
    /// consumes.
    Vec field(const Vec& state) const;

private:
    IsotopyFamily iso_;
    BumpProfile window_;
    SuspensionSettings settings_;
    std::size_t d_;
};

/// Sample domains for the measured-norms report: `block` covers the support
/// block in R^{2d}, `section` covers the core region of the section map
/// (the half-ball the section experiments sample, inside the cutoff
/// plateau of the bundled generators).
struct NormGapGrids {
    GridDomain block;
    GridDomain section;
};

NormGapGrids standard_norm_gap_grids(std::size_t d, double rho, double xi = 0.5);

/// Measured ingredients of the closeness estimate for a suspension: the C^2
/// size of H - y_d against the C^1 size of the endpoint map, normalized by
/// the geometry factor
///
///     bracket = 1 + rho + 1/rho + rho * |g - id|_{C^3}^2.
///
/// `ratio` is then deviation_c2 / (bracket * map_c1).  When the endpoint
/// map is the identity both sides vanish and the ratio is reported as
/// degenerate instead of a 0/0 artifact.
struct NormGapReport {
    double deviation_c2 = 0.0; // |H - y_d|_{C^2} over the block grid
    double map_c1 = 0.0;       // |g - id|_{C^1} over the section grid
    double map_c3 = 0.0;       // |g - id|_{C^3} over the section grid
    double bracket = 0.0;
    double ratio = 0.0;
    bool degenerate = false;
};

NormGapReport norm_gap_report(const SuspendedHamiltonian& susp, const NormGapGrids& grids);

} // namespace susp
