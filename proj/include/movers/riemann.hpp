#pragma once

// Ground-truth generators used for test construction and error measurement:
// the exact Riemann solution of the 1D Euler equations, normal and oblique
// shock relations, and regular reflection of an oblique shock at a wall.

#include <array>

#include "movers/euler.hpp"
#include "movers/fv1d.hpp"

namespace movers::riemann {

enum class WaveKind { Shock, Rarefaction };

/// Self-similar solution U(x/t) of a Riemann problem centred at x/t = 0.
struct RiemannSolution {
    Primitive left;
    Primitive right;
    GasModel gas;

    double p_star = 0.0;
    double u_star = 0.0;
    double rho_star_left = 0.0;
    double rho_star_right = 0.0;
    WaveKind left_wave = WaveKind::Rarefaction;
    WaveKind right_wave = WaveKind::Rarefaction;
    int iterations = 0;

    /// Leftmost/rightmost signal speeds of each nonlinear wave (equal for shocks).
    double left_head = 0.0;
    double left_tail = 0.0;
    double right_tail = 0.0;
    double right_head = 0.0;

    Primitive sample(double xi) const;

    /// Residual f_L(p*) + f_R(p*) + (u_R - u_L) of the pressure equation.
    double pressure_residual() const;
};

/// Newton iteration on the two-wave pressure function with a two-rarefaction
/// initial guess and bisection safeguard. Throws InvalidStateError if the data
/// generate vacuum.
RiemannSolution exact_riemann(const Primitive& left, const Primitive& right, const GasModel& gas = {});

/// Downstream state of a stationary normal shock with upstream Mach number
/// `mach` (> 1, or exactly 1 for the trivial case). The upstream speed is taken
/// as mach * a_upstream in the direction of upstream.u (positive if zero);
/// upstream.v is carried through unchanged.
Primitive normal_shock_from_mach(double mach, const Primitive& upstream, const GasModel& gas = {});

/// The stationary upstream/downstream pair for a normal shock at x = const.
std::array<Primitive, 2> steady_shock_pair(double mach, double rho_up, double p_up, const GasModel& gas = {});

/// Post-shock state behind a shock moving in +x at Mach `mach` relative to the
/// quiescent-frame gas `ahead`.
Primitive moving_shock_state(double mach, const Primitive& ahead, const GasModel& gas = {});

/// Oblique shock at angle `shock_angle` to the upstream velocity. Positive
/// angles turn the flow clockwise, negative ones counter-clockwise. Throws
/// ConfigError when the normal Mach number is not supersonic.
Primitive oblique_shock_state(const Primitive& upstream, double shock_angle, const GasModel& gas = {});

/// Weak-branch shock angle (> 0, clockwise) that turns `upstream` clockwise by
/// `deflection`. Throws ConfigError beyond the maximum attached deflection.
double weak_shock_angle(const Primitive& upstream, double deflection, const GasModel& gas = {});

/// Flow direction angle atan2(v, u).
double flow_angle(const Primitive& w);

/// Incident + reflected shock at a straight wall aligned with the upstream flow.
struct RegularReflection {
    Primitive upstream;
    Primitive behind_incident;
    Primitive behind_reflected;
    double incident_angle = 0.0;   ///< to the upstream flow
    double deflection = 0.0;       ///< flow turning through each shock
    double reflected_angle = 0.0;  ///< to the flow behind the incident shock
    /// Inclination of the reflected shock line to the wall.
    double reflected_wall_angle() const { return reflected_angle - deflection; }
};

/// Weak-branch regular reflection. Throws ConfigError if no attached
/// reflected shock exists.
RegularReflection regular_reflection(const Primitive& upstream, double incident_angle, const GasModel& gas = {});

/// Per-variable L1 errors dx * sum |q_j - q_exact((x_j - x0) / t)|.
struct L1Error {
    double rho = 0.0;
    double u = 0.0;
    double p = 0.0;
};

L1Error l1_error(const fv1d::Field1D& field, const RiemannSolution& oracle, double t, double x0,
                 const GasModel& gas = {});

}  // namespace movers::riemann
