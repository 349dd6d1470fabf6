#include "isoimp/base_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"
#include "isoimp/lambert.hpp"
#include "isoimp/optimizer.hpp"

namespace isoimp {

namespace {

constexpr double kTau = 2.0 * M_PI;
constexpr double kDvTieTol = 1e-6;  // [km/s]

// Transfer angles this close to 0 or pi are excluded from the search: the
// connecting plane degenerates there and the endpoint matching turns
// ill-conditioned. Extremal solutions at apse-to-apse geometry are picked up
// just outside the guard, where the approach direction fixes the plane.
constexpr double kArcAngleGuard = 2e-4;  // [rad]

struct ArcEval {
    bool ok = false;
    Eigen::Vector3d v1 = Eigen::Vector3d::Zero();
    Eigen::Vector3d v2 = Eigen::Vector3d::Zero();
};

ArcEval best_arc(const Eigen::Vector3d& r1, const Eigen::Vector3d& v_dep,
                 const Eigen::Vector3d& r2, const Eigen::Vector3d& v_arr,
                 double tof, const CentralBody& body) {
    ArcEval best;
    const double angle = safe_acos(r1.dot(r2) / (r1.norm() * r2.norm()));
    if (angle < kArcAngleGuard || angle > M_PI - kArcAngleGuard) return best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (TransferPath path : {TransferPath::ShortWay, TransferPath::LongWay}) {
        try {
            const auto arcs = solve_lambert(r1, r2, tof, 0, path, body);
            for (const auto& arc : arcs) {
                const double cost = (arc.v1 - v_dep).norm() + (v_arr - arc.v2).norm();
                if (cost < best_cost) {
                    best_cost = cost;
                    best = {true, arc.v1, arc.v2};
                }
            }
        } catch (const std::exception&) {
            // excluded geometry or unreachable time; the other path may work
        }
    }
    return best;
}

Eigen::Vector3d midpoint_position(double r, double azimuth, double elevation) {
    return {r * std::cos(elevation) * std::cos(azimuth),
            r * std::cos(elevation) * std::sin(azimuth),
            r * std::sin(elevation)};
}

struct TwoEval {
    bool ok = false;
    double dv_total = 0.0;
    StateVector dep, arr;          // terminal-orbit states at the impulses
    Eigen::Vector3d v1, v2;        // arc terminal velocities
};

TwoEval eval_two(const ManeuverSpec& spec, const CentralBody& body,
                 const std::array<double, 3>& vars) {
    TwoEval out;
    OrbitElements oi = spec.initial_orbit;
    OrbitElements of = spec.target_orbit;
    oi.ta = wrap_angle(vars[0]);
    of.ta = wrap_angle(vars[1]);
    out.dep = elements_to_state(oi, body);
    out.arr = elements_to_state(of, body);
    const ArcEval arc = best_arc(out.dep.r, out.dep.v, out.arr.r, out.arr.v, vars[2], body);
    if (!arc.ok) return out;
    out.ok = true;
    out.v1 = arc.v1;
    out.v2 = arc.v2;
    out.dv_total = (arc.v1 - out.dep.v).norm() + (out.arr.v - arc.v2).norm();
    return out;
}

struct ThreeEval {
    bool ok = false;
    double dv_total = 0.0;
    StateVector dep, arr;
    Eigen::Vector3d r_mid;
    Eigen::Vector3d v1a, v1b;  // arc 1 terminal velocities
    Eigen::Vector3d v2a, v2b;  // arc 2 terminal velocities
};

ThreeEval eval_three(const ManeuverSpec& spec, const CentralBody& body,
                     const std::array<double, 7>& vars) {
    ThreeEval out;
    OrbitElements oi = spec.initial_orbit;
    OrbitElements of = spec.target_orbit;
    oi.ta = wrap_angle(vars[0]);
    of.ta = wrap_angle(vars[1]);
    out.dep = elements_to_state(oi, body);
    out.arr = elements_to_state(of, body);
    out.r_mid = midpoint_position(vars[4], vars[5], vars[6]);

    const double angle1 =
        safe_acos(out.dep.r.dot(out.r_mid) / (out.dep.r.norm() * out.r_mid.norm()));
    const double angle2 =
        safe_acos(out.r_mid.dot(out.arr.r) / (out.r_mid.norm() * out.arr.r.norm()));
    if (angle1 < kArcAngleGuard || angle1 > M_PI - kArcAngleGuard ||
        angle2 < kArcAngleGuard || angle2 > M_PI - kArcAngleGuard) {
        return out;
    }

    double best = std::numeric_limits<double>::infinity();
    for (TransferPath p1 : {TransferPath::ShortWay, TransferPath::LongWay}) {
        std::vector<LambertArc> arcs1;
        try {
            arcs1 = solve_lambert(out.dep.r, out.r_mid, vars[2], 0, p1, body);
        } catch (const std::exception&) {
            continue;
        }
        for (TransferPath p2 : {TransferPath::ShortWay, TransferPath::LongWay}) {
            std::vector<LambertArc> arcs2;
            try {
                arcs2 = solve_lambert(out.r_mid, out.arr.r, vars[3], 0, p2, body);
            } catch (const std::exception&) {
                continue;
            }
            const double cost = (arcs1[0].v1 - out.dep.v).norm() +
                                (arcs2[0].v1 - arcs1[0].v2).norm() +
                                (out.arr.v - arcs2[0].v2).norm();
            if (cost < best) {
                best = cost;
                out.ok = true;
                out.v1a = arcs1[0].v1;
                out.v1b = arcs1[0].v2;
                out.v2a = arcs2[0].v1;
                out.v2b = arcs2[0].v2;
            }
        }
    }
    out.dv_total = best;
    return out;
}

// True anomalies at which an orbit crosses the given inertial direction.
std::array<double, 2> anomalies_toward(const OrbitElements& el, const Eigen::Vector3d& dir,
                                       const CentralBody& body) {
    OrbitElements at_peri = el;
    at_peri.ta = 0.0;
    const StateVector sp = elements_to_state(at_peri, body);
    const Eigen::Vector3d p_hat = sp.r.normalized();
    const Eigen::Vector3d h_hat = sp.r.cross(sp.v).normalized();
    const Eigen::Vector3d q_hat = h_hat.cross(p_hat);
    const double ta = std::atan2(dir.dot(q_hat), dir.dot(p_hat));
    return {wrap_angle(ta), wrap_angle(ta + M_PI)};
}

// Line of nodes between the two orbit planes; falls back to the apse line for
// coplanar problems.
Eigen::Vector3d relative_node(const ManeuverSpec& spec, const CentralBody& body) {
    OrbitElements a = spec.initial_orbit, b = spec.target_orbit;
    a.ta = 0.0;
    b.ta = 0.0;
    const StateVector sa = elements_to_state(a, body);
    const StateVector sb = elements_to_state(b, body);
    const Eigen::Vector3d ha = sa.r.cross(sa.v);
    const Eigen::Vector3d hb = sb.r.cross(sb.v);
    Eigen::Vector3d node = ha.cross(hb);
    if (node.norm() < 1e-8 * ha.norm() * hb.norm()) {
        node = sa.r;  // coplanar: any in-plane direction works as an anchor
    }
    return node.normalized();
}

double half_period_between(double r1, double r2, const CentralBody& body) {
    return 0.5 * period_from_sma(0.5 * (r1 + r2), body);
}

double orbit_radius(const OrbitElements& el, double ta) {
    return el.a * (1.0 - el.e * el.e) / (1.0 + el.e * std::cos(ta));
}

// Terminal coasts for rendezvous specs; zero otherwise.
void fill_coasts(const ManeuverSpec& spec, const CentralBody& body, BaseSolution& sol) {
    if (spec.departure_ta) {
        sol.t_c1 = time_between_anomalies(spec.initial_orbit, *spec.departure_ta,
                                          sol.theta_i, body);
    }
    if (spec.arrival_ta) {
        sol.t_c2 = time_between_anomalies(spec.target_orbit, sol.theta_f,
                                          *spec.arrival_ta, body);
    }
}

void check_spec(const ManeuverSpec& spec) {
    const OrbitElements& a = spec.initial_orbit;
    const OrbitElements& b = spec.target_orbit;
    if (std::abs(a.a - b.a) < 1e-9 && std::abs(a.e - b.e) < 1e-12 &&
        std::abs(a.inc - b.inc) < 1e-12 && std::abs(a.raan - b.raan) < 1e-12 &&
        std::abs(a.argp - b.argp) < 1e-12) {
        throw ConfigError("base solver: terminal orbits are identical (zero-impulse transfer)");
    }
    if (spec.maneuver_class == ManeuverClass::TimeFixedRendezvous && !spec.mission_time) {
        throw ConfigError("base solver: time-fixed rendezvous requires a mission time");
    }
}

}  // namespace

double two_impulse_cost(const ManeuverSpec& spec, const CentralBody& body,
                        const std::array<double, 3>& vars, double penalty) {
    const TwoEval e = eval_two(spec, body, vars);
    return e.ok ? e.dv_total : penalty;
}

double three_impulse_cost(const ManeuverSpec& spec, const CentralBody& body,
                          const std::array<double, 7>& vars, double penalty) {
    const ThreeEval e = eval_three(spec, body, vars);
    return e.ok ? e.dv_total : penalty;
}

namespace {

double three_impulse_cost_floored(const ManeuverSpec& spec, const CentralBody& body,
                                  const std::array<double, 7>& vars, double penalty,
                                  double min_floor) {
    const ThreeEval e = eval_three(spec, body, vars);
    if (!e.ok) return penalty;
    if (min_floor > 0.0) {
        const double m1 = (e.v1a - e.dep.v).norm();
        const double m2 = (e.v2a - e.v1b).norm();
        const double m3 = (e.arr.v - e.v2b).norm();
        if (std::min({m1, m2, m3}) < min_floor) return penalty;
    }
    return e.dv_total;
}

}  // namespace

BaseSolution solve_two_impulse(const ManeuverSpec& spec, const CentralBody& body,
                               const OptimizerConfig& opt) {
    check_spec(spec);
    const OrbitElements& oi = spec.initial_orbit;
    const OrbitElements& of = spec.target_orbit;

    const double t_small = std::min(period_from_sma(oi.a, body), period_from_sma(of.a, body));
    const double t_hi = period_from_sma(oi.apoapsis() + of.apoapsis(), body);
    const std::vector<double> lower = {0.0, 0.0, 1e-3 * t_small};
    const std::vector<double> upper = {kTau, kTau, t_hi};

    // node- and apse-anchored starting points
    const Eigen::Vector3d node = relative_node(spec, body);
    const auto ni = anomalies_toward(oi, node, body);
    const auto nf = anomalies_toward(of, node, body);
    std::vector<std::vector<double>> seeds;
    for (double ti : {ni[0], ni[1], 0.0, M_PI}) {
        for (double tf : {nf[0], nf[1], 0.0, M_PI}) {
            const double th = half_period_between(orbit_radius(oi, ti), orbit_radius(of, tf), body);
            seeds.push_back({ti, tf, th});
        }
    }

    Objective f = [&](const std::vector<double>& x) {
        return two_impulse_cost(spec, body, {x[0], x[1], x[2]}, opt.penalty);
    };

    OptimumPoint best{{}, std::numeric_limits<double>::infinity()};
    DeSettings de;
    de.population_multiplier = opt.population_multiplier;
    de.generations = opt.generations;
    for (int r = 0; r < std::max(1, opt.restarts); ++r) {
        de.seed = opt.seed + 1000003ULL * static_cast<std::uint64_t>(r);
        const OptimumPoint p = minimize_global(f, lower, upper, de, seeds);
        if (p.value < best.value) best = p;
    }
    if (best.value >= opt.penalty) {
        throw ConvergenceError("two-impulse solver: no feasible geometry found");
    }

    const TwoEval e = eval_two(spec, body, {best.x[0], best.x[1], best.x[2]});
    BaseSolution sol;
    sol.kind = BaseKind::TwoImpulse;
    sol.theta_i = wrap_angle(best.x[0]);
    sol.theta_f = wrap_angle(best.x[1]);
    sol.t_pf_arcs = {best.x[2]};
    fill_coasts(spec, body, sol);

    StateVector dep = e.dep, arr = e.arr;
    dep.t = sol.t_c1;
    arr.t = sol.t_c1 + best.x[2];
    const Eigen::Vector3d dv1 = e.v1 - dep.v;
    const Eigen::Vector3d dv2 = arr.v - e.v2;
    sol.impulses = {{dep.t, dv1, dv1.norm(), 1}, {arr.t, dv2, dv2.norm(), 2}};
    StateVector pre_arr = arr;
    pre_arr.v = e.v2;
    sol.ap_states = {dep, pre_arr};
    sol.T_pf_periods = {period_from_state({dep.r, e.v1, 0.0}, body)};
    sol.dv_total = e.dv_total;
    return sol;
}

BaseSolution solve_three_impulse(const ManeuverSpec& spec, const CentralBody& body,
                                 const OptimizerConfig& opt,
                                 const BaseSolution* two_impulse_seed) {
    check_spec(spec);
    const OrbitElements& oi = spec.initial_orbit;
    const OrbitElements& of = spec.target_orbit;

    const double t_small = std::min(period_from_sma(oi.a, body), period_from_sma(of.a, body));
    const double r_apo = std::max(oi.apoapsis(), of.apoapsis());
    const double r_lo = opt.midpoint_radius_lo > 0.0
                            ? opt.midpoint_radius_lo
                            : 0.5 * std::min(oi.periapsis(), of.periapsis());
    const double r_hi = opt.midpoint_radius_hi > 0.0 ? opt.midpoint_radius_hi
                                                     : 20.0 * r_apo;
    const double t_hi = 0.5 * period_from_sma(0.5 * (r_hi + r_apo), body);
    const std::vector<double> lower = {0.0, 0.0, 1e-3 * t_small, 1e-3 * t_small,
                                       r_lo, 0.0, -0.5 * M_PI};
    const std::vector<double> upper = {kTau, kTau, t_hi, t_hi, r_hi, kTau, 0.5 * M_PI};

    const Eigen::Vector3d node = relative_node(spec, body);
    const auto ni = anomalies_toward(oi, node, body);
    const auto nf = anomalies_toward(of, node, body);
    const double node_az = std::atan2(node.y(), node.x());

    std::vector<std::vector<double>> seeds;
    for (double ti : {ni[0], ni[1], 0.0, M_PI}) {
        for (double tf : {nf[0], nf[1], 0.0, M_PI}) {
            for (double rm : {1.5 * r_apo, 2.5 * r_apo, 5.0 * r_apo}) {
                for (double az : {node_az, node_az + M_PI}) {
                    const double t1 = half_period_between(orbit_radius(oi, ti), rm, body);
                    const double t2 = half_period_between(rm, orbit_radius(of, tf), body);
                    seeds.push_back({ti, tf, t1, t2, rm, wrap_angle(az), 0.0});
                }
            }
        }
    }
    if (two_impulse_seed) {
        // the two-impulse optimum with a vanishing midcourse impulse on the arc
        const StateVector& dep = two_impulse_seed->ap_states[0];
        const Eigen::Vector3d v1 = dep.v + two_impulse_seed->impulses[0].dv;
        const double t_pf = two_impulse_seed->t_pf_arcs[0];
        for (double frac : {0.25, 0.5, 0.75}) {
            const StateVector mid = propagate({dep.r, v1, 0.0}, frac * t_pf, body);
            const double rm = mid.r.norm();
            const double az = std::atan2(mid.r.y(), mid.r.x());
            const double el = std::asin(std::min(1.0, std::max(-1.0, mid.r.z() / rm)));
            seeds.push_back({two_impulse_seed->theta_i, two_impulse_seed->theta_f,
                             frac * t_pf, (1.0 - frac) * t_pf, rm, wrap_angle(az), el});
        }
    }

    Objective f = [&](const std::vector<double>& x) {
        return three_impulse_cost_floored(spec, body,
                                          {x[0], x[1], x[2], x[3], x[4], x[5], x[6]},
                                          opt.penalty, opt.min_impulse_floor);
    };

    OptimumPoint best{{}, std::numeric_limits<double>::infinity()};
    DeSettings de;
    de.population_multiplier = opt.population_multiplier;
    de.generations = opt.generations;
    for (int r = 0; r < std::max(1, opt.restarts); ++r) {
        de.seed = opt.seed + 1000003ULL * static_cast<std::uint64_t>(r) + 17ULL;
        const OptimumPoint p = minimize_global(f, lower, upper, de, seeds);
        if (p.value < best.value) best = p;
    }
    if (best.value >= opt.penalty) {
        throw ConvergenceError("three-impulse solver: no feasible geometry found");
    }

    const ThreeEval e = eval_three(
        spec, body, {best.x[0], best.x[1], best.x[2], best.x[3], best.x[4], best.x[5], best.x[6]});

    // A vanishing midcourse impulse means the search collapsed onto the
    // two-impulse solution. Return the canonical representation of that
    // degenerate family: the midpoint rides the connecting orbit and one
    // whole revolution of it separates the (zero) midcourse impulse from
    // the terminal ones.
    const double collapsed =
        std::min({(e.v1a - e.dep.v).norm(), (e.v2a - e.v1b).norm(),
                  (e.arr.v - e.v2b).norm()});
    if (opt.min_impulse_floor <= 0.0 && collapsed < 1e-6 && two_impulse_seed) {
        const BaseSolution& seed = *two_impulse_seed;
        BaseSolution sol;
        sol.kind = BaseKind::ThreeImpulse;
        sol.theta_i = seed.theta_i;
        sol.theta_f = seed.theta_f;
        const double t_pf = seed.t_pf_arcs[0];
        const double period = seed.T_pf_periods[0];
        sol.t_pf_arcs = {0.5 * t_pf, 0.5 * t_pf + period};
        fill_coasts(spec, body, sol);

        StateVector dep = seed.ap_states[0];
        dep.t = sol.t_c1;
        const Eigen::Vector3d v1 = dep.v + seed.impulses[0].dv;
        const StateVector mid = propagate({dep.r, v1, dep.t}, 0.5 * t_pf, body);
        StateVector arr = seed.ap_states[1];
        arr.t = sol.t_c1 + t_pf + period;
        sol.impulses = {{dep.t, seed.impulses[0].dv, seed.impulses[0].mag, 1},
                        {mid.t, Eigen::Vector3d::Zero(), 0.0, 2},
                        {arr.t, seed.impulses[1].dv, seed.impulses[1].mag, 3}};
        sol.ap_states = {dep, mid, arr};
        sol.T_pf_periods = {period, period};
        sol.dv_total = seed.dv_total;
        const double r_mid = mid.r.norm();
        sol.midpoint = MidPoint{r_mid, wrap_angle(std::atan2(mid.r.y(), mid.r.x())),
                                std::asin(std::min(1.0, std::max(-1.0, mid.r.z() / r_mid)))};
        sol.notes.push_back(
            "midcourse impulse vanishes: the two-impulse base dominates; midpoint "
            "parked on the connecting orbit with one whole revolution");
        return sol;
    }

    BaseSolution sol;
    sol.kind = BaseKind::ThreeImpulse;
    sol.theta_i = wrap_angle(best.x[0]);
    sol.theta_f = wrap_angle(best.x[1]);
    sol.t_pf_arcs = {best.x[2], best.x[3]};
    sol.midpoint = MidPoint{best.x[4], wrap_angle(best.x[5]), best.x[6]};
    fill_coasts(spec, body, sol);

    StateVector dep = e.dep, arr = e.arr;
    dep.t = sol.t_c1;
    const double t_mid = sol.t_c1 + best.x[2];
    arr.t = t_mid + best.x[3];
    const Eigen::Vector3d dv1 = e.v1a - dep.v;
    const Eigen::Vector3d dv2 = e.v2a - e.v1b;
    const Eigen::Vector3d dv3 = arr.v - e.v2b;
    sol.impulses = {{dep.t, dv1, dv1.norm(), 1},
                    {t_mid, dv2, dv2.norm(), 2},
                    {arr.t, dv3, dv3.norm(), 3}};
    StateVector mid_pre{e.r_mid, e.v1b, t_mid};
    StateVector arr_pre = arr;
    arr_pre.v = e.v2b;
    sol.ap_states = {dep, mid_pre, arr_pre};
    sol.T_pf_periods = {period_from_state({dep.r, e.v1a, 0.0}, body),
                        period_from_state({e.r_mid, e.v2a, 0.0}, body)};
    sol.dv_total = e.dv_total;
    if (std::min({dv1.norm(), dv2.norm(), dv3.norm()}) < 1e-6) {
        sol.notes.push_back(
            "midcourse or terminal impulse is vanishing; the two-impulse base likely "
            "dominates this transfer");
    }
    return sol;
}

SelectionVerdict select_base(const ManeuverSpec& spec, const BaseSolution& two,
                             const BaseSolution& three, const CentralBody& body) {
    SelectionVerdict verdict;
    const double dv2 = two.dv_total;
    const double dv3 = three.dv_total;

    if (spec.maneuver_class != ManeuverClass::TimeFixedRendezvous) {
        if (std::abs(dv2 - dv3) <= kDvTieTol) {
            verdict.chosen = two.coast_total() <= three.coast_total() ? ChosenBase::Two
                                                                      : ChosenBase::Three;
            verdict.rationale = SelectionRationale::EqualDvShorterTime;
        } else {
            verdict.chosen = dv2 < dv3 ? ChosenBase::Two : ChosenBase::Three;
            verdict.rationale = SelectionRationale::LowerDv;
        }
        return verdict;
    }

    const double mission = spec.mission_time.value();
    const double t0 = period_from_sma(spec.initial_orbit.a, body);
    const double tf = period_from_sma(spec.target_orbit.a, body);
    const double threshold = std::min(t0, tf);
    const double tof2 = mission - two.coast_total();
    const double tof3 = mission - three.coast_total();
    const bool ok2 = tof2 >= threshold;
    const bool ok3 = tof3 >= threshold;

    if (ok2 && ok3) {
        if (std::abs(dv2 - dv3) <= kDvTieTol) {
            verdict.chosen = two.coast_total() <= three.coast_total() ? ChosenBase::Two
                                                                      : ChosenBase::Three;
            verdict.rationale = SelectionRationale::EqualDvShorterTime;
        } else {
            verdict.chosen = dv2 < dv3 ? ChosenBase::Two : ChosenBase::Three;
            verdict.rationale = SelectionRationale::LowerDv;
        }
        verdict.tof_available = verdict.chosen == ChosenBase::Two ? tof2 : tof3;
    } else if (ok2 || ok3) {
        verdict.chosen = ok2 ? ChosenBase::Two : ChosenBase::Three;
        const double dv_chosen = ok2 ? dv2 : dv3;
        const double dv_other = ok2 ? dv3 : dv2;
        verdict.rationale = dv_chosen <= dv_other + kDvTieTol
                                ? SelectionRationale::LowerDv
                                : SelectionRationale::TimeFeasibleOnly;
        verdict.tof_available = ok2 ? tof2 : tof3;
    } else {
        // neither base fits inside the mission time
        const bool two_better = dv2 <= dv3;
        const BaseSolution& pref = two_better ? two : three;
        const double tof_pref = mission - pref.coast_total();
        verdict.tof_available = tof_pref;
        const int kappa = static_cast<int>(std::ceil((threshold - tof_pref) / tf));
        verdict.extended_mission_time = mission + kappa * tf;
        if (spec.allow_relaxed_time) {
            verdict.chosen = two_better ? ChosenBase::Two : ChosenBase::Three;
            verdict.rationale = SelectionRationale::RelaxedTime;
        } else {
            verdict.chosen = ChosenBase::None;
            verdict.rationale = SelectionRationale::InfeasibleSuggestLambert;
        }
    }
    return verdict;
}

MissionExtension extend_mission(const ManeuverSpec& spec, const BaseSolution& base,
                                int kappa, const CentralBody& body) {
    if (kappa < 0) throw ConfigError("extend_mission: kappa must be non-negative");
    const double tf = period_from_sma(spec.target_orbit.a, body);
    const double mission0 = spec.mission_time ? *spec.mission_time : base.coast_total();
    MissionExtension ext;
    ext.mission_time = mission0 + kappa * tf;
    ext.tof = ext.mission_time - base.coast_total();
    return ext;
}

const char* to_string(ChosenBase c) {
    switch (c) {
        case ChosenBase::Two: return "two-impulse";
        case ChosenBase::Three: return "three-impulse";
        default: return "none";
    }
}

const char* to_string(SelectionRationale r) {
    switch (r) {
        case SelectionRationale::EqualDvShorterTime: return "equal-dv-shorter-time";
        case SelectionRationale::LowerDv: return "lower-dv";
        case SelectionRationale::TimeFeasibleOnly: return "time-feasible-only";
        case SelectionRationale::InfeasibleSuggestLambert: return "infeasible-suggest-lambert";
        default: return "relaxed-time";
    }
}

const char* to_string(ManeuverClass c) {
    switch (c) {
        case ManeuverClass::TimeFreeTransfer: return "time-free-transfer";
        case ManeuverClass::TimeFreeRendezvous: return "time-free-rendezvous";
        default: return "time-fixed-rendezvous";
    }
}

}  // namespace isoimp
