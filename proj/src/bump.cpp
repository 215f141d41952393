#include "susp/bump.hpp"

#include "susp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace susp {
namespace {

// exp(-1/t) and derivatives.  Returns all four orders at once because the
// higher derivatives reuse the same exponential.
struct HVals {
    double h0 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0;
};

HVals eval_h(double t) {
    HVals v;
    if (t <= 0.0) return v;
    const double inv = 1.0 / t;
    // Below exp(-745) the value underflows to zero; bail out before the
    // inverse powers can meet an infinity.
    if (inv > 745.0) return v;
    const double e = std::exp(-inv);
    const double i2 = inv * inv;
    const double i3 = i2 * inv;
    const double i4 = i2 * i2;
    const double i5 = i4 * inv;
    const double i6 = i3 * i3;
    v.h0 = e;
    v.h1 = e * i2;
    v.h2 = e * (i4 - 2.0 * i3);
    v.h3 = e * (i6 - 6.0 * i5 + 6.0 * i4);
    return v;
}

} // namespace

namespace detail {

double smoothstep(double t, int order) {
    if (order < 0 || order > 3)
        throw UnsupportedOrderError("smoothstep", "derivative order must be in 0..3");
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return order == 0 ? 1.0 : 0.0;

    const HVals a = eval_h(t);
    const HVals braw = eval_h(1.0 - t);
    // b(t) = h(1-t): odd-order chain factors flip sign.
    const double b0 = braw.h0, b1 = -braw.h1, b2 = braw.h2, b3 = -braw.h3;

    const double s0 = a.h0 + b0;
    if (s0 == 0.0) return 0.0; // deep in either tail both terms underflow
    if (order == 0) return a.h0 / s0;

    const double s1 = a.h1 + b1;
    const double n0 = a.h1 * b0 - a.h0 * b1;
    if (order == 1) return n0 / (s0 * s0);

    const double s2 = a.h2 + b2;
    const double n1 = a.h2 * b0 - a.h0 * b2;
    if (order == 2) return (n1 * s0 - 2.0 * n0 * s1) / (s0 * s0 * s0);

    const double n2 = a.h3 * b0 + a.h2 * b1 - a.h1 * b2 - a.h0 * b3;
    const double s0sq = s0 * s0;
    return (n2 * s0sq - 4.0 * n1 * s0 * s1 - 2.0 * n0 * s0 * s2 + 6.0 * n0 * s1 * s1) /
           (s0sq * s0sq);
}

} // namespace detail

BumpProfile rise_profile(double xi) {
    if (!(xi > 0.0))
        throw Error("rise_profile", "rise width xi must be positive");
    BumpProfile p;
    p.kind = ProfileKind::Rise;
    p.xi = xi;
    return p;
}

BumpProfile window_profile(double nu, double rho) {
    if (!(nu > 0.0 && nu < 1.0))
        throw Error("window_profile", "plateau fraction nu must lie in (0, 1)");
    if (!(rho > 0.0))
        throw Error("window_profile", "support radius rho must be positive");
    BumpProfile p;
    p.kind = ProfileKind::Window;
    p.nu = nu;
    p.rho = rho;
    return p;
}

double eval_bump(const BumpProfile& profile, double t, int order) {
    if (order < 0 || order > 3)
        throw UnsupportedOrderError("eval_bump", "derivative order must be in 0..3");

    if (profile.kind == ProfileKind::Rise) {
        if (t <= 0.0) return 0.0;
        if (t >= profile.xi) return order == 0 ? 1.0 : 0.0;
        const double scale = 1.0 / profile.xi;
        double v = detail::smoothstep(t * scale, order);
        for (int k = 0; k < order; ++k) v *= scale;
        return v;
    }

    // Window: a function of |t|, flat on the plateau, zero beyond rho.
    const double r = std::abs(t);
    const double nu_rho = profile.nu * profile.rho;
    if (r <= nu_rho) return order == 0 ? 1.0 : 0.0;
    if (r >= profile.rho) return 0.0;

    const double w = (1.0 - profile.nu) * profile.rho;
    const double u = (profile.rho - r) / w;
    // d/dt |t| = sign(t) on the transition band (0 is inside the plateau).
    const double chain = (t > 0.0 ? -1.0 : 1.0) / w;
    double v = detail::smoothstep(u, order);
    for (int k = 0; k < order; ++k) v *= chain;
    return v;
}

BumpCertificate certify_bump_norms(const BumpProfile& profile, std::size_t samples) {
    if (profile.kind != ProfileKind::Window)
        throw WrongProfileError("certify_bump_norms",
                                "derivative budgets are defined for Window profiles only");
    if (samples < 1000)
        throw ResolutionError("certify_bump_norms",
                              "need at least 1000 samples for a trustworthy supremum");
    // The interesting behaviour lives in the two transition bands of width
    // (1-nu)*rho; a uniform scan that drops fewer than ~32 samples into each
    // band would report a supremum taken almost entirely on the flats.
    const double band_fraction = 1.0 - profile.nu;
    if (static_cast<double>(samples) * band_fraction < 64.0)
        throw ResolutionError("certify_bump_norms",
                              "transition band of width " + std::to_string(band_fraction) +
                                  "*rho is unresolved at " + std::to_string(samples) +
                                  " samples");

    BumpCertificate cert;
    cert.samples = samples;

    const double rho = profile.rho;
    double sup1 = 0.0, sup2 = 0.0;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double y = -rho + 2.0 * rho * static_cast<double>(i) / static_cast<double>(samples);
        sup1 = std::max(sup1, std::abs(eval_bump(profile, y, 1)));
        sup2 = std::max(sup2, std::abs(eval_bump(profile, y, 2)));
    }

    const double w = (1.0 - profile.nu) * rho;
    cert.slope_estimate = sup1;
    cert.slope_budget = 2.0 / w;
    cert.slope_ok = sup1 <= cert.slope_budget * (1.0 + 1e-9);
    cert.curvature_estimate = sup2;
    cert.curvature_budget = 12.0 / (w * w);
    cert.curvature_ok = sup2 <= cert.curvature_budget;
    return cert;
}

} // namespace susp
