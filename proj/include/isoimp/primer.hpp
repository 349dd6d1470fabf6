#pragma once

#include <vector>

#include "isoimp/body.hpp"
#include "isoimp/maneuver.hpp"

namespace isoimp {

/// Sampled primer-vector magnitude along an impulsive solution, plus the
/// first-order extremality verdict.
struct PrimerHistory {
    std::vector<std::pair<double, double>> samples;  // (t [s], |p|)
    double max_interior = 0.0;  // max |p| strictly between impulses
    bool extremal = false;
    std::vector<double> violation_times;  // epochs where |p| > 1 + tol
};

/// An impulsive trajectory as a plain impulse schedule: epochs, vectors, and
/// the pre-impulse state at each impulse. Base solutions and assembled
/// multi-impulse members both reduce to this.
struct ImpulseSchedule {
    std::vector<Impulse> impulses;
    std::vector<StateVector> pre_states;  // state immediately before each impulse
};

ImpulseSchedule schedule_from_base(const BaseSolution& base);

/// Primer boundary conditions: the unit vectors of the impulses.
std::vector<Eigen::Vector3d> boundary_conditions(const ImpulseSchedule& sched);

/// Lawden's construction: on each coast arc the primer is the STM-propagated
/// costate matching the bounding impulse unit vectors. `n_samples` points are
/// evaluated per arc. Extremality tolerance on |p| - 1 is 1e-6.
PrimerHistory primer_history(const ImpulseSchedule& sched, int n_samples,
                             const CentralBody& body);
PrimerHistory primer_history(const BaseSolution& base, int n_samples,
                             const CentralBody& body);

}  // namespace isoimp
