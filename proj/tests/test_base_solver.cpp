#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoimp/base_solver.hpp"
#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"
#include "isoimp/primer.hpp"
#include "isoimp/state.hpp"

using namespace isoimp;

namespace {
const CentralBody kEarth = CentralBody::earth();

OptimizerConfig quick_opt() {
    OptimizerConfig opt;
    opt.seed = 5;
    opt.generations = 250;
    opt.restarts = 2;
    return opt;
}

ManeuverSpec circular_pair(double r1, double r2, double inc1, double inc2) {
    ManeuverSpec spec;
    spec.initial_orbit = {r1, 0.0, inc1, 0.0, 0.0, 0.0};
    spec.target_orbit = {r2, 0.0, inc2, 0.0, 0.0, 0.0};
    return spec;
}
}  // namespace

TEST_CASE("coplanar circular transfer reproduces the tangential two-burn optimum") {
    const double r = 8000.0;
    const ManeuverSpec spec = circular_pair(r, 2.0 * r, 0.0, 0.0);
    const BaseSolution sol = solve_two_impulse(spec, kEarth, quick_opt());

    // closed-form oracle for the apse-to-apse transfer
    const double v1 = std::sqrt(kEarth.mu / r);
    const double v2 = std::sqrt(kEarth.mu / (2.0 * r));
    const double dv1 = v1 * (std::sqrt(4.0 / 3.0) - 1.0);
    const double dv2 = v2 * (1.0 - std::sqrt(2.0 / 3.0));
    CHECK(sol.dv_total == doctest::Approx(dv1 + dv2).epsilon(2e-4));
    CHECK(sol.impulses[0].mag == doctest::Approx(dv1).epsilon(2e-3));
    CHECK(sol.impulses[1].mag == doctest::Approx(dv2).epsilon(2e-3));
    // connecting time approaches half the transfer-ellipse period
    const double t_half = 0.5 * period_from_sma(1.5 * r, kEarth);
    CHECK(sol.t_pf_arcs[0] == doctest::Approx(t_half).epsilon(1e-2));
}

TEST_CASE("converged solutions keep position continuity across the arcs") {
    const ManeuverSpec spec = circular_pair(8000.0, 20000.0, 0.3, 0.0);
    const BaseSolution two = solve_two_impulse(spec, kEarth, quick_opt());
    StateVector s = two.ap_states[0];
    s.v += two.impulses[0].dv;
    const StateVector hit = propagate(s, two.t_pf_arcs[0], kEarth);
    CHECK((hit.r - two.ap_states[1].r).norm() < 1e-6);

    double mag_sum = 0.0;
    for (const Impulse& imp : two.impulses) mag_sum += imp.mag;
    CHECK(two.dv_total == doctest::Approx(mag_sum).epsilon(1e-14));
}

TEST_CASE("mirror of a coaxial solution about the node plane costs the same") {
    const ManeuverSpec spec = circular_pair(8000.0, 16000.0, 45.0 * M_PI / 180.0, 0.0);
    const BaseSolution three = solve_three_impulse(spec, kEarth, quick_opt());
    REQUIRE(three.midpoint.has_value());

    const std::array<double, 7> vars = {
        three.theta_i, three.theta_f, three.t_pf_arcs[0], three.t_pf_arcs[1],
        three.midpoint->r, three.midpoint->azimuth, three.midpoint->elevation};
    const std::array<double, 7> mirrored = {
        wrap_angle(M_PI - vars[0]), wrap_angle(M_PI - vars[1]), vars[2], vars[3],
        vars[4], wrap_angle(M_PI - vars[5]), vars[6]};
    const double direct = three_impulse_cost(spec, kEarth, vars, 1e6);
    const double image = three_impulse_cost(spec, kEarth, mirrored, 1e6);
    CHECK(std::abs(direct - image) < 1e-9);
}

TEST_CASE("three-impulse solve never loses to its two-impulse seed") {
    const ManeuverSpec spec = circular_pair(8000.0, 20000.0, 0.5, 0.0);
    const BaseSolution two = solve_two_impulse(spec, kEarth, quick_opt());
    const BaseSolution three = solve_three_impulse(spec, kEarth, quick_opt(), &two);
    CHECK(three.dv_total <= two.dv_total + 1e-6);
}

TEST_CASE("identical orbits are rejected up front") {
    ManeuverSpec spec = circular_pair(8000.0, 8000.0, 0.3, 0.3);
    CHECK_THROWS_AS(solve_two_impulse(spec, kEarth, quick_opt()), ConfigError);
}

TEST_CASE("time-fixed rendezvous requires a mission time") {
    ManeuverSpec spec = circular_pair(8000.0, 16000.0, 0.3, 0.0);
    spec.maneuver_class = ManeuverClass::TimeFixedRendezvous;
    CHECK_THROWS_AS(solve_two_impulse(spec, kEarth, quick_opt()), ConfigError);
}

namespace {

// hand-built candidates for the selection logic
BaseSolution fake_base(BaseKind kind, double dv, double coast_seconds) {
    BaseSolution sol;
    sol.kind = kind;
    sol.dv_total = dv;
    sol.t_pf_arcs = {coast_seconds};
    Impulse imp{0.0, {dv, 0.0, 0.0}, dv, 1};
    sol.impulses = {imp, imp};
    return sol;
}

}  // namespace

TEST_CASE("selection follows the flowchart") {
    ManeuverSpec spec = circular_pair(8000.0, 16000.0, 0.3, 0.0);
    const double t0 = period_from_sma(8000.0, kEarth);
    const double tf = period_from_sma(16000.0, kEarth);

    SUBCASE("time-free: lower total impulse wins") {
        const auto v = select_base(spec, fake_base(BaseKind::TwoImpulse, 2.0, 5000.0),
                                   fake_base(BaseKind::ThreeImpulse, 1.8, 9000.0), kEarth);
        CHECK(v.chosen == ChosenBase::Three);
        CHECK(v.rationale == SelectionRationale::LowerDv);
    }
    SUBCASE("time-free: ties break on flight time") {
        const auto v = select_base(spec, fake_base(BaseKind::TwoImpulse, 2.0, 5000.0),
                                   fake_base(BaseKind::ThreeImpulse, 2.0, 9000.0), kEarth);
        CHECK(v.chosen == ChosenBase::Two);
        CHECK(v.rationale == SelectionRationale::EqualDvShorterTime);
    }
    SUBCASE("time-fixed: only the time-feasible candidate survives") {
        spec.maneuver_class = ManeuverClass::TimeFixedRendezvous;
        spec.mission_time = 5000.0 + t0 + 10.0;  // two fits, three cannot
        const auto v = select_base(spec, fake_base(BaseKind::TwoImpulse, 2.2, 5000.0),
                                   fake_base(BaseKind::ThreeImpulse, 1.8, 9000.0), kEarth);
        CHECK(v.chosen == ChosenBase::Two);
        CHECK(v.rationale == SelectionRationale::TimeFeasibleOnly);
    }
    SUBCASE("time-fixed: nothing fits, the fixed-time fallback is suggested") {
        spec.maneuver_class = ManeuverClass::TimeFixedRendezvous;
        spec.mission_time = 5100.0;
        const auto v = select_base(spec, fake_base(BaseKind::TwoImpulse, 2.0, 5000.0),
                                   fake_base(BaseKind::ThreeImpulse, 1.8, 9000.0), kEarth);
        CHECK(v.chosen == ChosenBase::None);
        CHECK(v.rationale == SelectionRationale::InfeasibleSuggestLambert);
        REQUIRE(v.extended_mission_time.has_value());
        CHECK(*v.extended_mission_time >= 5100.0 + tf - 1.0);
    }
    SUBCASE("time-fixed: relaxation keeps the cheaper base") {
        spec.maneuver_class = ManeuverClass::TimeFixedRendezvous;
        spec.mission_time = 5100.0;
        spec.allow_relaxed_time = true;
        const auto v = select_base(spec, fake_base(BaseKind::TwoImpulse, 2.0, 5000.0),
                                   fake_base(BaseKind::ThreeImpulse, 1.8, 9000.0), kEarth);
        CHECK(v.chosen == ChosenBase::Three);
        CHECK(v.rationale == SelectionRationale::RelaxedTime);
    }
}

TEST_CASE("mission extension adds whole target periods") {
    ManeuverSpec spec = circular_pair(8000.0, 16000.0, 0.3, 0.0);
    spec.maneuver_class = ManeuverClass::TimeFixedRendezvous;
    spec.mission_time = 90000.0;
    const BaseSolution base = fake_base(BaseKind::TwoImpulse, 2.0, 50000.0);
    const double tf = period_from_sma(16000.0, kEarth);

    const MissionExtension zero = extend_mission(spec, base, 0, kEarth);
    CHECK(zero.mission_time == doctest::Approx(90000.0));
    CHECK(zero.tof == doctest::Approx(40000.0));

    const MissionExtension one = extend_mission(spec, base, 1, kEarth);
    CHECK(one.mission_time == doctest::Approx(90000.0 + tf));
    CHECK(one.tof == doctest::Approx(40000.0 + tf));

    CHECK_THROWS_AS(extend_mission(spec, base, -1, kEarth), ConfigError);
}
