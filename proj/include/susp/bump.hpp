#pragma once

#include <cstddef>

namespace susp {

/// The two smooth switch shapes used by the construction.
///
/// Rise: 0 for t <= 0, 1 for t >= xi, strictly increasing in between.
/// Drives the interpolation parameter of the isotopy.
///
/// Window: 1 for |t| <= nu*rho, 0 for |t| >= rho, even in t.  Confines the
/// perturbation to a band of the conjugate coordinate.
enum class ProfileKind { Rise, Window };

struct BumpProfile {
    ProfileKind kind = ProfileKind::Rise;
    double xi = 0.5;  // rise width (Rise only)
    double nu = 0.5;  // plateau fraction (Window only)
    double rho = 1.0; // support radius (Window only)
};

/// Rise profile with transition on (0, xi).
BumpProfile rise_profile(double xi);

/// Window profile equal to 1 on [-nu*rho, nu*rho] and 0 outside (-rho, rho).
BumpProfile window_profile(double nu, double rho);

/// Evaluates the profile or one of its first three derivatives.
///
/// Values on the flat regions are exact: the constant pieces return exactly
/// 0 or 1 and their derivatives return exactly 0, with no transcendental
/// round-off.  Orders above 3 raise UnsupportedOrderError.
double eval_bump(const BumpProfile& profile, double t, int order = 0);

/// Result of the derivative-budget certification of a Window profile.
///
/// The transition band has width w = (1-nu)*rho.  Any C^2 window attached
/// to this band has slope at least 1/w and curvature at least 4/w^2
/// somewhere, so the budgets below are fixed multiples of those scales:
/// the slope budget 2/w is attained exactly at the band midpoints by the
/// implemented shape, and the curvature budget 12/w^2 leaves roughly 20%
/// headroom over its measured maximum.
struct BumpCertificate {
    double slope_estimate = 0.0;     // dense-sample sup of |d/dt|
    double slope_budget = 0.0;       // 2 / w
    bool slope_ok = false;
    double curvature_estimate = 0.0; // dense-sample sup of |d^2/dt^2|
    double curvature_budget = 0.0;   // 12 / w^2
    bool curvature_ok = false;
    std::size_t samples = 0;
};

/// Estimates sup|first derivative| and sup|second derivative| of a Window
/// profile by dense sampling of [-rho, rho] and compares them against the
/// budgets above.  The slope comparison allows one part in 1e9 for rounding
/// because the true supremum sits exactly on the budget.
///
/// Requires a Window profile (WrongProfileError otherwise) and at least
/// 1000 samples (ResolutionError otherwise).
BumpCertificate certify_bump_norms(const BumpProfile& profile, std::size_t samples = 4096);

namespace detail {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1.  Built from
/// h(t) = exp(-1/t) as h(t) / (h(t) + h(1-t)).  `order` in 0..3.
double smoothstep(double t, int order);

} // namespace detail

} // namespace susp
