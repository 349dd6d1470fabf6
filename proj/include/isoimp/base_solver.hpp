#pragma once

#include <array>
#include <optional>

#include "isoimp/body.hpp"
#include "isoimp/maneuver.hpp"

namespace isoimp {

/// Total impulse of the two-impulse transfer for decision variables
/// (theta_i, theta_f, t_pf); infeasible geometry costs `penalty`.
double two_impulse_cost(const ManeuverSpec& spec, const CentralBody& body,
                        const std::array<double, 3>& vars, double penalty);

/// Total impulse of the three-impulse transfer for decision variables
/// (theta_i, theta_f, t_pf1, t_pf2, r_mid, azimuth, elevation).
double three_impulse_cost(const ManeuverSpec& spec, const CentralBody& body,
                          const std::array<double, 7>& vars, double penalty);

/// Minimize the two-impulse total impulse over terminal anomalies and the
/// connecting arc time.
BaseSolution solve_two_impulse(const ManeuverSpec& spec, const CentralBody& body,
                               const OptimizerConfig& opt);

/// Minimize the three-impulse total impulse; additionally searches the
/// midcourse impulse position. When a two-impulse solution is supplied it is
/// injected into the search population (with a vanishing midcourse impulse),
/// so the result can never be worse than the two-impulse one.
BaseSolution solve_three_impulse(const ManeuverSpec& spec, const CentralBody& body,
                                 const OptimizerConfig& opt,
                                 const BaseSolution* two_impulse_seed = nullptr);

/// Base-solution selection for all maneuver classes.
SelectionVerdict select_base(const ManeuverSpec& spec, const BaseSolution& two,
                             const BaseSolution& three, const CentralBody& body);

/// Mission-time extension by whole target-orbit periods.
struct MissionExtension {
    double mission_time;  // [s]
    double tof;           // available time of flight [s]
};
MissionExtension extend_mission(const ManeuverSpec& spec, const BaseSolution& base,
                                int kappa, const CentralBody& body);

}  // namespace isoimp
