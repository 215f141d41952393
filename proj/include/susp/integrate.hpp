#pragma once

#include "susp/smallvec.hpp"
#include "susp/suspension.hpp"

#include <cstddef>
#include <vector>

namespace susp {

/// Step-control parameters for the adaptive integrator.  `max_step = 0`
/// caps steps at a tenth of the integration span, which keeps the dense
/// sampling meaningful even where the field is exactly constant.
struct IntegratorSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.0;
    double min_step = 1e-14;
    std::size_t max_steps = 200000;
    std::size_t dense_per_step = 8; // interior samples per accepted step
};

/// Region of validity of the suspension chart.  Trajectories of admissible
/// data never get near the walls; leaving the box means the inputs violated
/// the construction's hypotheses and integration aborts with
/// DomainExitError rather than reporting values the model does not cover.
struct ChartBox {
    double section_halfwidth = 2.0; // |x_i|, |y_i| for i < d
    double xd_lo = -0.5;
    double xd_hi = 1.5;
    double yd_halfwidth = 1.0;      // |y_d|

    bool contains(const Vec& state, std::size_t d) const;
};

ChartBox default_chart_box(const SuspendedHamiltonian& susp);

/// Accepted-step history of one trajectory.  `times`/`states`/`energies`
/// are aligned; `excursion` is the largest |y_d| seen over the accepted
/// states and the dense interior samples.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<double> energies;
    double excursion = 0.0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

/// Integrates dZ/dt = J grad H from `state0` over [0, t1] with the
/// Dormand-Prince 5(4) pair, embedded error control and 4th-order dense
/// output.  Throws StiffnessError if step control collapses and
/// DomainExitError if the trajectory leaves the chart box.
Trajectory integrate(const SuspendedHamiltonian& susp, const Vec& state0, double t1,
                     const IntegratorSettings& settings = {});

/// Final state only.
Vec flow_state(const SuspendedHamiltonian& susp, const Vec& state0, double t1,
               const IntegratorSettings& settings = {});

/// Fixed-step integrator of order 8 built from the extrapolated midpoint
/// rule.  Slow and deliberately independent of the adaptive code path; used
/// to cross-check it.
Vec integrate_fixed_order8(const SuspendedHamiltonian& susp, const Vec& state0, double t1,
                           std::size_t macro_steps);

/// One pass through the suspension block, entering on the section
/// {x_d = 0, y_d = 0}.
struct SectionRecord {
    Vec input;          // section point (x, y)
    Vec exit_state;     // full state at t = 1
    Vec output;         // section point read off exit_state
    double exit_yd = 0.0;
    double xd_defect = 0.0; // |x_d(1) - 1|
    double excursion = 0.0; // max |y_d| along the trajectory
    double residual = 0.0;  // sup-distance of `output` from the direct endpoint map
};

/// Flows the embedded section point (x, 0, y, 0) to time one and compares
/// the outcome with the isotopy endpoint evaluated directly.
SectionRecord time_one_section_map(const SuspendedHamiltonian& susp, const Vec& section_point,
                                   const IntegratorSettings& settings = {});

/// The flow restricted to the window plateau, where it has a closed form:
/// the section part rides the isotopy, x_d advances at unit speed and y_d
/// moves by the difference of the slice Hamiltonian between departure and
/// arrival (K is conserved along its own slice flow, so the time integral
/// of dK/dalpha telescopes).  Preconditions: x_d and x_d + t lie in [0, 1]
/// and the state starts on the plateau (|y_d| <= nu * rho); throws
/// DomainExitError if the result leaves the plateau, where the formula
/// stops being valid.
Vec closed_form_flow(const SuspendedHamiltonian& susp, const Vec& state0, double t);

} // namespace susp
