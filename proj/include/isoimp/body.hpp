#pragma once

namespace isoimp {

inline constexpr double kSecondsPerDay = 86400.0;

/// Central body of the two-body problem. Internal units are km, km/s, s
/// throughout the library; days appear only at the I/O boundary.
struct CentralBody {
    double mu;              // gravitational parameter [km^3/s^2]
    double length_unit_km;  // canonical distance unit used for reporting

    static CentralBody earth() { return {398600.4418, 6378.137}; }
    static CentralBody sun() { return {1.32712440018e11, 1.495978707e8}; }
};

inline constexpr double kAstronomicalUnitKm = 1.495978707e8;

}  // namespace isoimp
