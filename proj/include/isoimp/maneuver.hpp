#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isoimp/state.hpp"

namespace isoimp {

struct Impulse {
    double t;            // epoch on the solution timeline [s]
    Eigen::Vector3d dv;  // impulse vector [km/s]
    double mag;          // |dv| [km/s]
    int ap_index;        // anchor position this impulse belongs to (1..3)
};

enum class BaseKind { TwoImpulse, ThreeImpulse };

/// Spherical coordinates of the midcourse impulse position.
struct MidPoint {
    double r;          // position magnitude [km]
    double azimuth;    // [rad]
    double elevation;  // [rad]
};

/// A time-free, phase-free two- or three-impulse extremal transfer.
struct BaseSolution {
    BaseKind kind;
    std::vector<Impulse> impulses;       // ordered by epoch
    std::vector<StateVector> ap_states;  // pre-impulse state at each AP
    std::vector<double> t_pf_arcs;       // connecting arc durations [s]
    double t_c1 = 0.0;                   // initial-orbit coast before the first impulse [s]
    double t_c2 = 0.0;                   // target-orbit coast after the last impulse [s]
    std::vector<double> T_pf_periods;    // orbital period of each connecting arc [s]
    double dv_total = 0.0;               // [km/s]
    double theta_i = 0.0, theta_f = 0.0; // terminal true anomalies [rad]
    std::optional<MidPoint> midpoint;    // three-impulse only
    std::vector<std::string> notes;

    double coast_total() const {
        double s = t_c1 + t_c2;
        for (double t : t_pf_arcs) s += t;
        return s;
    }
};

enum class ManeuverClass { TimeFreeTransfer, TimeFreeRendezvous, TimeFixedRendezvous };

struct ManeuverSpec {
    ManeuverClass maneuver_class = ManeuverClass::TimeFreeTransfer;
    OrbitElements initial_orbit;
    OrbitElements target_orbit;
    std::optional<double> mission_time;  // t_f - t_0 [s]; required for time-fixed
    std::optional<double> departure_ta;  // fixed phase on the initial orbit [rad]
    std::optional<double> arrival_ta;    // fixed phase on the target orbit [rad]
    bool allow_relaxed_time = false;     // permit extending a time-fixed mission
};

enum class ChosenBase { Two, Three, None };

enum class SelectionRationale {
    EqualDvShorterTime,
    LowerDv,
    TimeFeasibleOnly,
    InfeasibleSuggestLambert,
    RelaxedTime,
};

struct SelectionVerdict {
    ChosenBase chosen = ChosenBase::None;
    SelectionRationale rationale = SelectionRationale::LowerDv;
    std::optional<double> extended_mission_time;  // [s]
    std::optional<double> tof_available;          // [s]
};

struct OptimizerConfig {
    std::uint64_t seed = 12345;
    int population_multiplier = 15;
    int generations = 600;
    int restarts = 8;
    double penalty = 1e6;  // objective value for infeasible geometry [km/s]

    // search window for the midcourse impulse radius [km]; zero selects the
    // defaults (half the smaller periapsis, twenty times the larger apoapsis).
    // Problems in the bi-parabolic regime have no interior optimum, so the
    // window ceiling decides which representative solution comes out.
    double midpoint_radius_lo = 0.0;
    double midpoint_radius_hi = 0.0;

    // three-impulse searches collapse onto the two-impulse solution when the
    // midcourse impulse vanishes; setting a floor excludes that manifold and
    // returns the best genuinely three-impulse extremal instead [km/s]
    double min_impulse_floor = 0.0;
};

const char* to_string(ChosenBase c);
const char* to_string(SelectionRationale r);
const char* to_string(ManeuverClass c);

}  // namespace isoimp
