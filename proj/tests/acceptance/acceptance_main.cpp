// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fixtures.hpp"
#include "isoimp/allocation.hpp"
#include "isoimp/base_solver.hpp"
#include "isoimp/circle_classifier.hpp"
#include "isoimp/envelopes.hpp"
#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"
#include "isoimp/lambert.hpp"
#include "isoimp/optimizer.hpp"
#include "isoimp/primer.hpp"
#include "isoimp/state.hpp"

using namespace isoimp;

namespace {

struct Checker {
    std::string name;
    bool ok = true;
    std::vector<std::string> failures;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s: got %.7f want %.7f (tol %.2g)",
                      what.c_str(), got, want, tol);
        expect(std::abs(got - want) <= tol, buf);
    }
    void near_rel(double got, double want, double rel, const std::string& what) {
        near(got, want, rel * std::abs(want), what);
    }
};

const CentralBody kEarth = CentralBody::earth();
const CentralBody kSun = CentralBody::sun();

double days(double seconds) { return seconds / kSecondsPerDay; }

// ---- shared geocentric solves, computed once --------------------------------
struct GeocentricBases {
    BaseSolution two;
    BaseSolution three;
    double wall_two = 0.0, wall_three = 0.0;
};

const GeocentricBases& geocentric_bases() {
    static const GeocentricBases bases = [] {
        GeocentricBases b;
        const OptimizerConfig opt = fixtures::geocentric_optimizer();
        const ManeuverSpec spec = fixtures::geocentric();
        auto t0 = std::chrono::steady_clock::now();
        b.two = solve_two_impulse(spec, kEarth, opt);
        auto t1 = std::chrono::steady_clock::now();
        b.three = solve_three_impulse(spec, kEarth, opt, &b.two);
        auto t2 = std::chrono::steady_clock::now();
        b.wall_two = std::chrono::duration<double>(t1 - t0).count();
        b.wall_three = std::chrono::duration<double>(t2 - t1).count();
        return b;
    }();
    return bases;
}

// budget for the geocentric allocation studies: mission extended by kappa
// target periods beyond the bare base coast
TimeBudget geocentric_budget(const BaseSolution& base, int kappa) {
    const ManeuverSpec spec = fixtures::geocentric();
    ManeuverSpec with_time = spec;
    with_time.mission_time = base.coast_total();
    const MissionExtension ext = extend_mission(with_time, base, kappa, kEarth);
    return make_budget(ext.mission_time, base, kEarth);
}

// ---------------------------------------------------------------- criterion 1
Checker criterion_1() {
    Checker c{"criterion 1: geocentric base solutions"};
    const GeocentricBases& b = geocentric_bases();

    c.near_rel(b.two.dv_total, 3.9618011, 1e-3, "two-impulse dv_total");
    c.near_rel(b.two.impulses[0].mag, 2.8246140, 5e-3, "two-impulse dv1");
    c.near_rel(b.two.impulses[1].mag, 1.1371871, 5e-3, "two-impulse dv2");

    c.near_rel(b.three.dv_total, 3.8641159, 1e-3, "three-impulse dv_total");
    c.near(b.three.impulses[0].mag, 2.9390, 5e-3, "three-impulse dv1");
    c.near(b.three.impulses[1].mag, 0.6815, 5e-3, "three-impulse dv2");
    c.near(b.three.impulses[2].mag, 0.2436, 5e-3, "three-impulse dv3");
    c.near(days(b.three.coast_total()), 6.4738, 0.01, "three-impulse coast [days]");

    c.expect(b.wall_two < 300.0, "two-impulse solve under 5 minutes");
    c.expect(b.wall_three < 300.0, "three-impulse solve under 5 minutes");
    return c;
}

// ---------------------------------------------------------------- criterion 2
Checker criterion_2() {
    Checker c{"criterion 2: geocentric single-AP feasibility bounds"};
    const BaseSolution& three = geocentric_bases().three;
    const TimeBudget budget = geocentric_budget(three, 1);
    c.near(days(budget.tof_p), 3.9191, 0.001, "TOF_p with kappa=1 [days]");

    std::vector<AnchorPosition> anchors = anchors_from_base(three, kEarth);
    anchors.resize(1);  // allocation at the largest-impulse AP only
    const FeasibilityBounds bounds = feasibility_bounds(anchors, budget);
    c.expect(bounds.feasible, "single-AP bounds exist");
    if (bounds.feasible) {
        c.near(bounds.per_ap[0].first, 0.73, 0.01, "lower bound on sumN1");
        c.near(bounds.per_ap[0].second, 58.09, 0.01, "upper bound on sumN1");
    }
    return c;
}

// ---------------------------------------------------------------- criterion 3
Checker criterion_3() {
    Checker c{"criterion 3: geocentric feasible-space enumerations"};
    const BaseSolution& three = geocentric_bases().three;
    const TimeBudget budget = geocentric_budget(three, 10);

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<AnchorPosition> anchors = anchors_from_base(three, kEarth);
    std::vector<AnchorPosition> two_aps = anchors;
    two_aps.resize(2);
    const FeasibilityBounds b2 = feasibility_bounds(two_aps, budget);
    c.expect(b2.feasible, "two-AP bounds exist");
    if (b2.feasible) {
        c.near(b2.per_ap[1].first, 6.3096, 0.01, "two-AP lower bound sumN2");
        c.near(b2.per_ap[1].second, 7.2970, 0.01, "two-AP upper bound sumN2");
        c.near(b2.per_ap[0].first, 6.3096, 0.01, "two-AP lower bound sumN1");
        c.near(b2.per_ap[0].second, 501.4617, 0.01, "two-AP upper bound sumN1");
    }
    const FeasibleSpace space2 = enumerate_feasible_space(two_aps, budget);
    c.expect(space2.count == 1817,
             "two-AP lattice count = 1817 (got " + std::to_string(space2.count) + ")");

    const FeasibilityBounds b3 = feasibility_bounds(anchors, budget);
    c.expect(b3.feasible, "three-AP bounds exist");
    if (b3.feasible) {
        c.near(b3.per_ap[0].first, 5.5786, 0.01, "three-AP lower bound sumN1");
        c.near(b3.per_ap[0].second, 443.3749, 0.01, "three-AP upper bound sumN1");
        c.near(b3.per_ap[1].first, 5.5786, 0.01, "three-AP lower bound sumN2");
        c.near(b3.per_ap[1].second, 6.5660, 0.01, "three-AP upper bound sumN2");
        c.near(b3.per_ap[2].first, 7.2639, 0.01, "three-AP lower bound sumN3");
        c.near(b3.per_ap[2].second, 8.6147, 0.01, "three-AP upper bound sumN3");
    }
    const FeasibleSpace space3 = enumerate_feasible_space(anchors, budget);
    c.expect(space3.count == 4747,
             "three-AP lattice count = 4747 (got " + std::to_string(space3.count) + ")");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(wall < 10.0, "enumerations under 10 s");
    return c;
}

// ---------------------------------------------------------------- criterion 4
Checker criterion_4() {
    Checker c{"criterion 4: geocentric solution envelopes"};
    const BaseSolution& three = geocentric_bases().three;
    const TimeBudget budget = geocentric_budget(three, 10);
    const std::vector<AnchorPosition> anchors = anchors_from_base(three, kEarth);

    c.near(days(anchors[0].T_max()), 5.3616, 0.005, "first-AP window top [days]");
    c.near(days(anchors[1].T_max()), 7.5606, 0.005, "second-AP window top [days]");

    // four orbits at the first AP, two at the second, one four-revolution
    // orbit at the third
    SolutionFamily family;
    family.per_ap = {{1, 1, 1, 1}, {1, 1}, {4}};
    const EnvelopeProblem prob = make_envelope_problem(family, anchors, budget);
    const std::vector<Envelope> envelopes = envelope_corners(prob);

    c.near(days(envelope_t11_max(prob)), 3.1978, 0.005, "T11 max [days]");

    auto find_env = [&](int ap, int k) -> const Envelope* {
        for (const Envelope& e : envelopes) {
            if (e.ap_index == ap && e.ladder_index == k) return &e;
        }
        return nullptr;
    };

    // extra corners of the clamped first-AP envelopes
    const Envelope* e31 = find_env(1, 3);
    const Envelope* e41 = find_env(1, 4);
    c.expect(e31 && e31->has_extra_upper_corner, "T_{3,1} envelope has corner 4");
    c.expect(e41 && e41->has_extra_upper_corner, "T_{4,1} envelope has corner 4");
    if (e31 && e31->has_extra_upper_corner) {
        c.near(days(e31->corners[e31->corners.size() - 2].first), 1.0341, 0.005,
               "T_{3,1} corner-4 abscissa [days]");
    }
    if (e41 && e41->has_extra_upper_corner) {
        c.near(days(e41->corners[e41->corners.size() - 2].first), 2.4765, 0.005,
               "T_{4,1} corner-4 abscissa [days]");
    }

    const Envelope* e12 = find_env(2, 1);
    const Envelope* e22 = find_env(2, 2);
    c.expect(e12 && e12->has_extra_upper_corner, "T_{1,2} envelope has corner 4");
    c.expect(e22 && e22->has_extra_upper_corner, "T_{2,2} envelope has corner 4");
    if (e12 && e12->has_extra_upper_corner) {
        c.near(days(e12->corners[e12->corners.size() - 2].first), 2.0983, 0.005,
               "T_{1,2} corner-4 abscissa [days]");
    }
    if (e22 && e22->has_extra_upper_corner) {
        c.near(days(e22->corners[e22->corners.size() - 2].first), 2.6481, 0.005,
               "T_{2,2} corner-4 abscissa [days]");
    }

    const Envelope* e13 = find_env(3, 1);
    c.expect(e13 != nullptr, "T_{1,3} envelope exists");
    if (e13) {
        c.near(days(e13->corners.front().second), 3.9191, 0.005, "T_{1,3} minimum [days]");
        c.near(days(e13->corners.back().second), 7.0492, 0.005, "T_{1,3} maximum [days]");
    }

    const EnvelopeVerification verification = verify_envelopes(prob, envelopes, 1e-8);
    c.expect(verification.ok(), "analytic corners match the LP oracle to 1e-8");
    for (const std::string& m : verification.mismatches) c.expect(false, "  " + m);
    return c;
}

// ---------------------------------------------------------------- criterion 5
Checker criterion_5() {
    Checker c{"criterion 5: Earth-to-Dionysus benchmark (reconstructed elements)"};
    const ManeuverSpec spec = fixtures::earth_to_dionysus(kSun);
    const OptimizerConfig opt = fixtures::heliocentric_optimizer();
    const BaseSolution two = solve_two_impulse(spec, kSun, opt);

    c.near_rel(two.dv_total, 9.907425, 1e-4, "base dv_total");
    c.near(days(two.t_c1), 193.24, 0.5, "t_c1 [days]");
    c.near(days(two.t_pf_arcs[0]), 348.46, 0.5, "t_pf [days]");
    c.near(days(two.t_c2), 501.81, 0.5, "t_c2 [days]");
    const double tof = *spec.mission_time - two.coast_total();
    c.near(days(tof), 2490.48, 0.5, "TOF [days]");

    const TimeBudget budget = make_budget(*spec.mission_time, two, kSun);
    const std::vector<AnchorPosition> anchors = anchors_from_base(two, kSun);
    const FeasibilityBounds bounds = feasibility_bounds(anchors, budget);
    c.expect(bounds.feasible, "two-AP bounds exist");
    if (bounds.feasible) {
        c.near(bounds.per_ap[1].second, 1.83, 0.01, "upper bound sumN2");
        c.near(bounds.per_ap[0].second, 3.64, 0.01, "upper bound sumN1");
        c.near(bounds.per_ap[0].first, 1.14, 0.01, "lower bound sumN1");
        c.near(bounds.per_ap[1].first, 1.14, 0.01, "lower bound sumN2");
    }

    // three phasing orbits at the first AP, one at the second
    SolutionFamily family;
    family.per_ap = {{1, 1, 1}, {1}};
    const EnvelopeProblem prob = make_envelope_problem(family, anchors, budget);
    const std::vector<Envelope> envelopes = envelope_corners(prob);
    auto find_env = [&](int ap, int k) -> const Envelope* {
        for (const Envelope& e : envelopes) {
            if (e.ap_index == ap && e.ladder_index == k) return &e;
        }
        return nullptr;
    };

    c.near(days(envelope_t11_max(prob)), 443.0, 0.5, "T11 max [days]");

    const Envelope* e21 = find_env(1, 2);
    c.expect(e21 != nullptr, "T_{2,1} envelope exists");
    if (e21) {
        c.near(days(e21->corners.back().second), 481.88, 0.5, "T_{2,1} max at T0 [days]");
    }
    const Envelope* e31 = find_env(1, 3);
    c.expect(e31 != nullptr, "T_{3,1} envelope exists");
    if (e31) {
        c.near(days(e31->corners.front().second), 466.67, 0.5, "T_{3,1} min at T0 [days]");
        c.near(days(e31->corners.back().second), 568.11, 0.5, "T_{3,1} max at T0 [days]");
        c.expect(e31->has_extra_lower_corner, "T_{3,1} envelope has corner 5");
        if (e31->has_extra_lower_corner) {
            c.near(days(e31->corners[1].first), 432.90, 0.5, "T_{3,1} corner-5 abscissa");
        }
    }
    const Envelope* e12 = find_env(2, 1);
    c.expect(e12 != nullptr, "T_{1,2} envelope exists");
    if (e12) {
        c.near(days(e12->corners.front().second), 1161.47, 0.5, "T_{1,2} min [days]");
        c.near(days(e12->corners.back().second), 1191.88, 0.5, "T_{1,2} max [days]");
        c.expect(e12->has_extra_upper_corner, "T_{1,2} envelope has corner 4");
        if (e12->has_extra_upper_corner) {
            c.near(days(e12->corners[e12->corners.size() - 2].first), 432.87, 0.5,
                   "T_{1,2} corner-4 abscissa [days]");
        }
    }

    const EnvelopeVerification verification = verify_envelopes(prob, envelopes, 1e-8);
    c.expect(verification.ok(), "analytic corners match the LP oracle to 1e-8");
    return c;
}

// ---------------------------------------------------------------- criterion 7
Checker criterion_7() {
    Checker c{"criterion 7: Earth-to-Mars benchmark (reconstructed elements)"};
    const OptimizerConfig opt = fixtures::heliocentric_optimizer();
    const ManeuverSpec transfer = fixtures::earth_to_mars(kSun);
    const BaseSolution two = solve_two_impulse(transfer, kSun, opt);
    const BaseSolution three = solve_three_impulse(transfer, kSun, opt, &two);

    c.near_rel(two.dv_total, 5.5865, 2e-3, "two-impulse dv_total");
    c.near_rel(three.dv_total, 5.5873, 2e-3, "three-impulse dv_total");
    c.near(days(two.coast_total()), 313.2430, 1.0, "two-impulse flight time [days]");
    c.near(days(three.coast_total()), 801.4034, 1.0, "three-impulse flight time [days]");

    // fixed 793-day rendezvous: neither base is time-feasible
    const ManeuverSpec rendezvous = fixtures::earth_to_mars_rendezvous(kSun);
    const BaseSolution two_r = solve_two_impulse(rendezvous, kSun, opt);
    const BaseSolution three_r = solve_three_impulse(rendezvous, kSun, opt, &two_r);
    const SelectionVerdict verdict = select_base(rendezvous, two_r, three_r, kSun);
    c.expect(verdict.chosen == ChosenBase::None, "verdict: no base fits 793 days");
    c.expect(verdict.rationale == SelectionRationale::InfeasibleSuggestLambert,
             "verdict suggests the fixed-time two-impulse fallback");
    c.expect(verdict.tof_available.has_value(), "available TOF reported");
    if (verdict.tof_available) {
        c.near(days(*verdict.tof_available), 72.7306, 0.05, "available TOF slack [days]");
    }

    const MissionExtension ext = extend_mission(rendezvous, two_r, 1, kSun);
    c.near(days(ext.mission_time), 1479.9658, 0.01, "kappa=1 mission time [days]");
    c.near(days(ext.tof), 759.6963, 0.01, "kappa=1 available TOF [days]");

    // 793-day two-impulse baseline between the fixed terminal points
    OrbitElements oe = rendezvous.initial_orbit;
    OrbitElements om = rendezvous.target_orbit;
    oe.ta = *rendezvous.departure_ta;
    om.ta = *rendezvous.arrival_ta;
    const StateVector dep = elements_to_state(oe, kSun);
    const StateVector arr = elements_to_state(om, kSun);
    double lambert_best = std::numeric_limits<double>::infinity();
    for (int nrev = 0; nrev <= 4; ++nrev) {
        for (TransferPath path : {TransferPath::ShortWay, TransferPath::LongWay}) {
            try {
                for (const LambertArc& arc : solve_lambert(
                         dep.r, arr.r, *rendezvous.mission_time, nrev, path, kSun)) {
                    lambert_best = std::min(
                        lambert_best, (arc.v1 - dep.v).norm() + (arr.v - arc.v2).norm());
                }
            } catch (const std::exception&) {
            }
        }
    }
    c.near_rel(lambert_best, 6.047, 5e-3, "793-day two-impulse baseline");
    return c;
}

// ---------------------------------------------------------------- criterion 6
Checker criterion_6() {
    Checker c{"criterion 6: circle-to-circle classifier and boundary points"};

    // planar separatrix: the two-impulse cost meets the bi-parabolic limit
    const double beta_a = find_root(
        [](double beta) {
            return circle_dv_two_impulse(beta, 0.0).dv - circle_dv_biparabolic(beta).dv;
        },
        0.05, 0.12, 1e-10);
    c.near(1.0 / beta_a, 11.94, 0.05, "planar separatrix 1/beta (point A)");

    // finite-apex three-impulse versus bi-parabolic transition: bisect on the
    // apex running away to the search cap
    auto apex_ran_out = [](double beta, double inc) {
        const CircleDv three = circle_dv_three_impulse(beta, inc, 1e5);
        return three.apex_ratio > 0.5 * 1e5 * std::max(1.0, 1.0 / beta);
    };
    auto transition_inc = [&](double beta) {
        double lo = 20.0 * fixtures::kDeg, hi = 80.0 * fixtures::kDeg;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            (apex_ran_out(beta, mid) ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double inc_e = transition_inc(1.0);
    c.near(inc_e / fixtures::kDeg, 60.185, 0.5, "point E inclination [deg]");

    // two- versus three-impulse separatrix and its inclination maximum (D);
    // below the critical inclination the optimal apex collapses onto the outer
    // circle and the costs coincide, so bisect on the strict-win predicate
    auto separatrix_inc = [](double beta) {
        double lo = 10.0 * fixtures::kDeg, hi = 80.0 * fixtures::kDeg;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            // margin above the inner optimizer's noise floor: the degenerate
            // apex branch reproduces the two-impulse cost up to polish slack
            const bool three_wins = circle_dv_three_impulse(beta, mid, 1e5).dv <
                                    circle_dv_two_impulse(beta, mid).dv - 1e-6;
            (three_wins ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    // near its maximum the separatrix needs the cost resolved to ~1e-9: a
    // second solution branch undercuts the two-impulse cost by well under
    // 1e-6 once beta passes the maximum, which a loose margin cannot see
    auto dv3_sharp = [](double beta, double inc) {
        const double ratio = 1.0 / beta;
        Objective obj = [&](const std::vector<double>& v) {
            if (v[1] + v[2] > 1.0) return 1e3;
            return circle_dv_three_impulse_at_apex(beta, inc, std::exp(v[0]), v[1], v[2]);
        };
        double best = 1e18;
        for (double lx = std::log(ratio) + 0.01; lx < std::log(ratio) + 4.0; lx += 0.02) {
            const OptimumPoint p =
                nelder_mead(obj, {lx, 0.03, 0.9}, {std::log(ratio), 0.0, 0.0},
                            {std::log(ratio) + 12.0, 1.0, 1.0}, {0.05, 0.02, 0.02},
                            1e-16, 4000);
            best = std::min(best, p.value);
        }
        return best;
    };
    auto knee_sharp = [&](double beta) {
        double lo = 39.5 * fixtures::kDeg, hi = 41.5 * fixtures::kDeg;
        for (int it = 0; it < 25; ++it) {
            const double mid = 0.5 * (lo + hi);
            const bool win =
                dv3_sharp(beta, mid) < circle_dv_two_impulse(beta, mid).dv - 1e-8;
            (win ? hi : lo) = mid;
        }
        return 0.5 * (lo + hi);
    };
    double beta_d = 0.0, inc_d = 0.0;
    for (double beta = 0.240; beta <= 0.2581; beta += 0.002) {
        const double knee = knee_sharp(beta);
        if (knee > inc_d) {
            inc_d = knee;
            beta_d = beta;
        }
    }
    c.near(beta_d, 0.2473, 0.005, "point D beta");
    c.near(inc_d / fixtures::kDeg, 40.841, 0.5, "point D inclination [deg]");

    // point C: three-impulse equals bi-parabolic at point D's inclination
    double c_lo = 0.1, c_hi = 0.4;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (c_lo + c_hi);
        (apex_ran_out(mid, inc_d) ? c_lo : c_hi) = mid;
    }
    const double beta_c = 0.5 * (c_lo + c_hi);
    c.near(beta_c, 0.1719, 0.005, "point C beta");

    // point B: the two/bi-parabolic cost boundary meets the two/three
    // separatrix, where all three constructions cost the same
    auto two_vs_bp_inc = [](double beta) {
        return find_root(
            [beta](double inc) {
                return circle_dv_two_impulse(beta, inc).dv -
                       circle_dv_biparabolic(beta).dv;
            },
            5.0 * fixtures::kDeg, 80.0 * fixtures::kDeg, 1e-9);
    };
    const double beta_b = find_root(
        [&](double beta) { return two_vs_bp_inc(beta) - separatrix_inc(beta); }, 0.12,
        0.2, 1e-7);
    c.near(beta_b, 0.149, 0.005, "point B beta");
    c.near(separatrix_inc(beta_b) / fixtures::kDeg, 37.389, 0.5,
           "point B inclination [deg]");

    // point F: identical orbits, everything free
    c.expect(classify_circle_transfer(1.0, 0.0) == CircleTransferKind::Boundary,
             "point F reports a boundary with zero cost");
    c.expect(classify_circle_transfer(0.2, 0.0) == CircleTransferKind::TwoImpulse,
             "(0.2, 0 deg) classifies as two-impulse");
    c.expect(classify_circle_transfer(0.5, 45.0 * fixtures::kDeg) ==
                 CircleTransferKind::ThreeImpulse,
             "(0.5, 45 deg) classifies as three-impulse");

    // full solves of the 45-degree pair, in physical units
    const ManeuverSpec pair = fixtures::circle_to_circle(kEarth);
    OptimizerConfig opt = fixtures::geocentric_optimizer();
    opt.midpoint_radius_hi = 0.0;  // interior optimum exists here
    const BaseSolution two = solve_two_impulse(pair, kEarth, opt);
    const BaseSolution three = solve_three_impulse(pair, kEarth, opt, &two);
    c.near_rel(two.dv_total, 1.7036, 2e-3, "two-impulse dv at beta=0.5, 45 deg");
    c.near_rel(three.dv_total, 1.6853, 2e-3, "three-impulse dv at beta=0.5, 45 deg");

    // time-feasibility thresholds: base flight time plus the initial period
    const double t0_period = days(period_from_sma(pair.initial_orbit.a, kEarth));
    c.near(days(three.coast_total()) + t0_period, 5.7904, 0.01,
           "three-impulse time threshold [days]");
    c.near(days(two.coast_total()) + t0_period, 2.9042, 0.01,
           "two-impulse time threshold [days]");
    return c;
}

// ---------------------------------------------------------------- criterion 8
Checker criterion_8() {
    Checker c{"criterion 8: property suites"};
    std::mt19937_64 rng(20240808);

    // alpha <-> period round trips on randomized anchors
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int worst_idx = -1;
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            AnchorPosition ap;
            const double r = 7000.0 + 60000.0 * u(rng);
            const double v_circ = std::sqrt(kEarth.mu / r);
            const double speed = v_circ * (0.75 + 0.5 * u(rng));
            const double fpa = (u(rng) - 0.5) * 0.8;
            ap.state_pre.r = {r, 0.0, 0.0};
            ap.state_pre.v = {speed * std::sin(fpa), speed * std::cos(fpa), 0.0};
            Eigen::Vector3d dv{0.4 * (u(rng) - 0.5), 0.9 * (u(rng) - 0.3),
                               0.2 * (u(rng) - 0.5)};
            // keep the alpha = 1 end bound
            StateVector end = ap.state_pre;
            end.v += dv;
            if (specific_energy(end, kEarth) >= -1e-4) continue;
            // a period extremum inside (or near) the ladder range makes the
            // inversion ill-conditioned by construction; keep it well outside
            const double flat_alpha = -ap.state_pre.v.dot(dv) / dv.squaredNorm();
            if (flat_alpha > -0.2 && flat_alpha < 1.2) continue;
            ap.dv_total_ap = dv;
            ap.T_alpha0 = period_from_state(ap.state_pre, kEarth);
            ap.T_alpha1 = period_from_state(end, kEarth);
            ap.energy_increasing = ap.T_alpha1 >= ap.T_alpha0;

            const double alpha = 1e-6 + (1.0 - 2e-6) * u(rng);
            double period;
            try {
                period = period_from_alpha(ap, alpha, kEarth);
            } catch (const UnboundOrbitError&) {
                continue;  // non-monotone window can still escape mid-way
            }
            double back;
            try {
                back = alpha_from_period(ap, period, kEarth, alpha - 1e-3);
            } catch (const InfeasibleError&) {
                continue;  // period outside the [T(0), T(1)] window (non-monotone)
            }
            if (std::abs(back - alpha) > worst) {
                worst = std::abs(back - alpha);
                worst_idx = i;
            }
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf), "alpha round trip worst %.3g (case %d)", worst,
                      worst_idx);
        c.expect(worst < 1e-12, buf);
    }

    // realized members reconstitute the mission time and the total impulse
    {
        const BaseSolution& three = geocentric_bases().three;
        const std::vector<AnchorPosition> anchors = anchors_from_base(three, kEarth);
        const TimeBudget budget = geocentric_budget(three, 10);
        SolutionFamily family;
        family.per_ap = {{1, 1, 1, 1}, {1, 1}, {4}};
        const std::vector<RealizedMember> members =
            sample_members(family, three, anchors, budget, 3, kEarth, 1, 64);
        c.expect(!members.empty(), "sampled members exist");
        for (const RealizedMember& m : members) {
            c.expect(std::abs(m.assembled.mission_time - budget.mission_time) <
                         1e-6 * kSecondsPerDay,
                     "member mission time within 1e-6 days");
            c.expect(std::abs(m.assembled.dv_total - three.dv_total) < 1e-9,
                     "member dv within 1e-9 km/s");
            // split impulses at each AP recombine into the base impulse
            for (std::size_t ap = 0; ap < anchors.size(); ++ap) {
                Eigen::Vector3d sum = Eigen::Vector3d::Zero();
                for (std::size_t k = 0; k < m.assembled.schedule.impulses.size(); ++k) {
                    if (m.assembled.schedule.impulses[k].ap_index ==
                        static_cast<int>(ap) + 1) {
                        sum += m.assembled.schedule.impulses[k].dv;
                    }
                }
                c.expect((sum - anchors[ap].dv_total_ap).norm() < 1e-9,
                         "split impulses recombine at AP " + std::to_string(ap + 1));
            }
        }
    }

    // primer magnitude on both geocentric bases
    {
        const GeocentricBases& b = geocentric_bases();
        for (const BaseSolution* sol : {&b.two, &b.three}) {
            const PrimerHistory hist = primer_history(*sol, 400, kEarth);
            c.expect(hist.max_interior <= 1.0 + 1e-6,
                     std::string("primer |p| <= 1 + 1e-6 on the ") +
                         (sol->kind == BaseKind::TwoImpulse ? "two" : "three") +
                         "-impulse base");
            const auto units = boundary_conditions(schedule_from_base(*sol));
            for (std::size_t k = 0; k < units.size(); ++k) {
                c.expect(std::abs(units[k].norm() - 1.0) < 1e-9, "unit impulse direction");
            }
        }
    }

    // Lambert / propagation round trips
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int checked = 0;
        double worst = 0.0;
        while (checked < 1000) {
            OrbitElements el;
            el.a = 8000.0 + 40000.0 * u(rng);
            el.e = 0.7 * u(rng);
            el.inc = 1e-3 + 1.3 * u(rng);
            el.raan = 2.0 * M_PI * u(rng);
            el.argp = 2.0 * M_PI * u(rng);
            el.ta = 2.0 * M_PI * u(rng);
            const StateVector s = elements_to_state(el, kEarth);
            const double period = period_from_state(s, kEarth);
            const int nrev = static_cast<int>(3.0 * u(rng));
            const double t = (nrev + 0.05 + 0.9 * u(rng)) * period;
            const StateVector target = propagate(s, t, kEarth);
            const double angle = safe_acos(s.r.dot(target.r) /
                                           (s.r.norm() * target.r.norm()));
            if (angle < 5e-3 || angle > M_PI - 5e-3) continue;
            const Eigen::Vector3d h = s.r.cross(s.v);
            const TransferPath path = s.r.cross(target.r).dot(h) >= 0.0
                                          ? TransferPath::ShortWay
                                          : TransferPath::LongWay;
            std::vector<LambertArc> arcs;
            try {
                arcs = solve_lambert(s.r, target.r, t, nrev, path, kEarth);
            } catch (const std::exception&) {
                continue;
            }
            double best = 1e9;
            for (const LambertArc& arc : arcs) {
                best = std::min(best, (arc.v1 - s.v).norm());
            }
            worst = std::max(worst, best);
            ++checked;
        }
        char buf[128];
        std::snprintf(buf, sizeof(buf), "lambert round trip worst %.3g km/s", worst);
        c.expect(worst < 1e-11, buf);
    }

    // envelope analytic-vs-LP equivalence and monotone area shrinkage
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int families_checked = 0;
        int guard = 0;
        while (families_checked < 50 && ++guard < 40000) {
            EnvelopeProblem prob;
            const int na = 1 + static_cast<int>(u(rng) * 3.0);
            double lo = 0.5 + 4.0 * u(rng);
            for (int i = 0; i < na; ++i) {
                const double width = 0.5 + 6.0 * u(rng);
                prob.windows.emplace_back(lo, lo + width);
                lo = lo * (0.6 + u(rng));
                prob.per_ap.push_back({});
            }
            for (int i = 0; i < na; ++i) {
                const int orbits = 1 + static_cast<int>(u(rng) * 3.0);
                for (int k = 0; k < orbits; ++k) {
                    prob.per_ap[i].push_back(1 + static_cast<int>(u(rng) * 3.0));
                }
            }
            // keep the polygon in the regime the construction covers: the left
            // edge sits at T0 and the rightmost collapse stays inside the window
            auto sum_revs = [&](int i) {
                int s = 0;
                for (int n : prob.per_ap[i]) s += n;
                return s;
            };
            double others_min = 0.0, others_max = 0.0;
            for (int i = 1; i < na; ++i) {
                others_min += sum_revs(i) * prob.windows[i].first;
                others_max += sum_revs(i) * prob.windows[i].second;
            }
            const double w1_lo = prob.windows[0].first;
            const double w1_hi = prob.windows[0].second;
            const int n11 = prob.per_ap[0][0];
            const int sum1 = sum_revs(0);
            const double tof_lo = others_min + sum1 * w1_lo;
            const double tof_hi_collapse = others_min + sum1 * w1_hi;
            const double tof_hi_left_edge =
                others_max + n11 * w1_lo + (sum1 - n11) * w1_hi;
            const double tof_hi = std::min(tof_hi_collapse, tof_hi_left_edge);
            if (tof_hi <= tof_lo * 1.001) continue;
            prob.tof_p = tof_lo + (0.05 + 0.35 * u(rng)) * (tof_hi - tof_lo);
            if (envelope_t11_max(prob) <= prob.windows[0].first) continue;

            const std::vector<Envelope> envelopes = envelope_corners(prob);
            if (envelopes.empty()) continue;

            EnvelopeProblem bigger = prob;
            const int ap_pick = static_cast<int>(u(rng) * na);
            const int orbit_pick =
                static_cast<int>(u(rng) * bigger.per_ap[ap_pick].size());
            bigger.per_ap[ap_pick][orbit_pick] += 1;
            double grown_min = 0.0;
            for (int i = 0; i < na; ++i) {
                for (int nrev : bigger.per_ap[i]) {
                    grown_min += nrev * bigger.windows[i].first;
                }
            }
            if (envelope_t11_max(bigger) <= bigger.windows[0].first ||
                grown_min > bigger.tof_p) {
                continue;
            }
            const std::vector<Envelope> grown = envelope_corners(bigger);

            // the shrinkage observation belongs to the floor-clamped regime:
            // once an orbit's minimum detaches from the window floor, an extra
            // revolution parked at the ceiling can genuinely widen another
            // orbit's admissible range
            bool floor_clamped = true;
            for (const Envelope& env : envelopes) {
                floor_clamped &= !env.has_extra_lower_corner;
            }
            for (const Envelope& env : grown) {
                floor_clamped &= !env.has_extra_lower_corner;
            }
            if (!floor_clamped) continue;

            const EnvelopeVerification verification = verify_envelopes(prob, envelopes);
            c.expect(verification.ok(), "random family " +
                                            std::to_string(families_checked) +
                                            ": analytic matches LP");
            for (const std::string& m : verification.mismatches) {
                c.expect(false, "  " + m);
            }

            for (const Envelope& env : grown) {
                for (const Envelope& old : envelopes) {
                    if (old.ap_index == env.ap_index &&
                        old.ladder_index == env.ladder_index) {
                        c.expect(env.area() <= old.area() * (1.0 + 1e-9),
                                 "envelope area shrinks under extra revolutions");
                    }
                }
            }
            ++families_checked;
        }
        c.expect(families_checked == 50, "fifty random families exercised");
    }
    return c;
}

using CriterionFn = std::function<Checker()>;

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::pair<std::string, CriterionFn>> criteria = {
        {"1", criterion_1}, {"2", criterion_2}, {"3", criterion_3},
        {"4", criterion_4}, {"5", criterion_5}, {"6", criterion_6},
        {"7", criterion_7}, {"8", criterion_8},
    };

    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[i + 1];
    }

    bool all_ok = true;
    for (const auto& [id, fn] : criteria) {
        if (!only.empty() && only != id) continue;
        const Checker result = fn();
        std::printf("[%s] %s\n", result.ok ? "PASS" : "FAIL", result.name.c_str());
        for (const std::string& f : result.failures) {
            std::printf("       %s\n", f.c_str());
        }
        std::fflush(stdout);
        all_ok = all_ok && result.ok;
    }
    return all_ok ? 0 : 1;
}
