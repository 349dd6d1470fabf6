#pragma once

#include <vector>

#include <Eigen/Dense>

#include "isoimp/body.hpp"

namespace isoimp {

enum class TransferPath { ShortWay, LongWay };

/// Solution of the two-point boundary value problem: terminal positions and a
/// transfer time determine the terminal velocities of the connecting conic.
struct LambertArc {
    Eigen::Vector3d r1, r2;  // terminal positions [km]
    double tof;              // transfer time [s], echoes the request
    Eigen::Vector3d v1, v2;  // terminal velocities [km/s]
    int nrev;                // completed revolutions on the arc
    TransferPath branch;
    bool high_energy;        // for nrev >= 1, tags the larger-sma member of the pair
};

/// Solve Lambert's problem. Returns one arc for nrev = 0 and the low/high
/// energy pair for nrev >= 1 (both, when they exist). Transfer angles within
/// 1e-6 rad of 0 or pi leave the plane undefined and are rejected.
///
/// Throws GeometryError (degenerate plane), InfeasibleError (tof below the
/// minimum for the requested nrev), ConvergenceError.
std::vector<LambertArc> solve_lambert(const Eigen::Vector3d& r1,
                                      const Eigen::Vector3d& r2, double tof,
                                      int nrev, TransferPath branch,
                                      const CentralBody& body);

}  // namespace isoimp
