#pragma once

#include "isoimp/body.hpp"

namespace isoimp {

/// Maneuver type with the lowest total impulse for a coaxial circle-to-circle
/// transfer with a plane change.
enum class CircleTransferKind { TwoImpulse, ThreeImpulse, BiParabolic, Boundary };

/// Total impulse per unit of initial circular speed, plus the optimizing
/// parameters of the construction.
struct CircleDv {
    double dv;            // normalized by sqrt(mu/r0)
    double split_first;   // plane-change fraction at the first burn
    double split_second;  // fraction at the second burn (three-impulse only)
    double apex_ratio;    // intermediate apoapsis / r0 (three-impulse only)
};

/// beta = r0/rf in (0, 1]; inc is the total plane change [rad].
CircleDv circle_dv_two_impulse(double beta, double inc);
CircleDv circle_dv_three_impulse(double beta, double inc, double apex_cap = 1e5);
CircleDv circle_dv_biparabolic(double beta);

/// Cost of the apoapsis-raising construction at a fixed apex (in units of r0)
/// and plane-split assignment; the remainder of the plane change happens at
/// arrival. Building block of the three-impulse search, exposed for analysis.
double circle_dv_three_impulse_at_apex(double beta, double inc, double apex_ratio,
                                       double split_first, double split_second);

/// Region of the (beta, inclination) plane the transfer falls into, decided by
/// comparing the three constructions; ties within `tie_tol` (normalized)
/// report Boundary.
CircleTransferKind classify_circle_transfer(double beta, double inc,
                                            double tie_tol = 1e-6);

const char* to_string(CircleTransferKind k);

}  // namespace isoimp
