#pragma once

#include <Eigen/Dense>

#include "isoimp/body.hpp"
#include "isoimp/state.hpp"

namespace isoimp {

/// State transition matrix of a conic arc, d(state at t0+dt)/d(state at t0)
/// with state ordered [r; v].
struct Stm {
    Eigen::Matrix<double, 6, 6> m;

    Eigen::Matrix3d drdr0() const { return m.block<3, 3>(0, 0); }
    Eigen::Matrix3d drdv0() const { return m.block<3, 3>(0, 3); }
    Eigen::Matrix3d dvdr0() const { return m.block<3, 3>(3, 0); }
    Eigen::Matrix3d dvdv0() const { return m.block<3, 3>(3, 3); }
};

enum class StmMethod { Analytic, FiniteDifference };

/// Advance a bound state by dt along its conic via the universal Kepler
/// equation (safeguarded Newton, tolerance 1e-12 on the universal anomaly).
StateVector propagate(const StateVector& s, double dt, const CentralBody& body);

/// State transition matrix over a conic arc of duration dt. The analytic form
/// uses the closed-form partials of the Lagrange coefficients; the
/// finite-difference form exists for validation.
Stm stm(const StateVector& s, double dt, const CentralBody& body,
        StmMethod method = StmMethod::Analytic);

/// Stumpff functions C2, C3 of z = alpha*chi^2.
void stumpff(double z, double& c2, double& c3);

}  // namespace isoimp
