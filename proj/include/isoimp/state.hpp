#pragma once

#include <Eigen/Dense>

#include "isoimp/body.hpp"

namespace isoimp {

/// Inertial Cartesian state.
struct StateVector {
    Eigen::Vector3d r;  // position [km]
    Eigen::Vector3d v;  // velocity [km/s]
    double t = 0.0;     // epoch [s]
};

/// Classical elements of an elliptic orbit. Angles in radians, normalized
/// to [0, 2*pi).
struct OrbitElements {
    double a;     // semi-major axis [km]
    double e;     // eccentricity
    double inc;   // inclination [rad]
    double raan;  // right ascension of the ascending node [rad]
    double argp;  // argument of periapsis [rad]
    double ta;    // true anomaly [rad]

    double periapsis() const { return a * (1.0 - e); }
    double apoapsis() const { return a * (1.0 + e); }
};

/// Wraps an angle into [0, 2*pi).
double wrap_angle(double x);

/// acos clamped against roundoff outside [-1, 1].
double safe_acos(double x);

double specific_energy(const StateVector& s, const CentralBody& body);

/// Orbital period of the bound orbit through `s` [s]. Throws UnboundOrbitError
/// for parabolic/hyperbolic states.
double period_from_state(const StateVector& s, const CentralBody& body);

double period_from_sma(double a, const CentralBody& body);
double sma_from_period(double period, const CentralBody& body);

/// Cartesian state at epoch 0 for the given elliptic elements.
StateVector elements_to_state(const OrbitElements& el, const CentralBody& body);

/// Classical elements of the bound orbit through `s`. Degenerate geometries
/// (e < 1e-10 or inc < 1e-10) report raan = argp = 0 with the true anomaly
/// measured from the synthesized reference direction.
OrbitElements state_to_elements(const StateVector& s, const CentralBody& body);

/// Time of flight along an orbit from true anomaly ta0 to ta1 (forward in
/// time, one revolution at most).
double time_between_anomalies(const OrbitElements& orbit, double ta0, double ta1,
                              const CentralBody& body);

/// True anomaly reached from ta0 after coasting dt (dt may exceed a period).
double anomaly_after_time(const OrbitElements& orbit, double ta0, double dt,
                          const CentralBody& body);

}  // namespace isoimp
