#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isoimp/body.hpp"
#include "isoimp/maneuver.hpp"
#include "isoimp/primer.hpp"

namespace isoimp {

/// Mission-time bookkeeping. tof is what remains after the base coast arcs;
/// tof_p is what may be spent on intermediate phasing orbits only.
struct TimeBudget {
    double mission_time = 0.0;  // t_f - t_0 [s]
    double base_coast = 0.0;    // t_c1 + sum of arcs + t_c2 [s]
    double tof = 0.0;           // mission_time - base_coast [s]
    double tof_p = 0.0;         // tof - N0*T0 - Nf*Tf - sum Npf*Tpf [s]
    int n0 = 0, nf = 0;         // whole revolutions on the terminal orbits
    std::vector<int> npf;       // whole revolutions per connecting arc
};

/// A position where the base solution applies an impulse that may be divided
/// into collinear sub-impulses feeding phasing orbits.
struct AnchorPosition {
    int index = 0;                 // 1..3
    StateVector state_pre;         // position and pre-impulse velocity
    Eigen::Vector3d dv_total_ap;   // full impulse vector at this AP
    double T_alpha0 = 0.0;         // phasing period at alpha = 0 [s]
    double T_alpha1 = 0.0;         // phasing period at alpha = 1 [s]
    bool energy_increasing = true;

    double T_min() const { return std::min(T_alpha0, T_alpha1); }
    double T_max() const { return std::max(T_alpha0, T_alpha1); }
};

/// Integer revolution counts on every trajectory segment.
struct SolutionFamily {
    int n0 = 0, nf = 0;
    std::vector<int> npf;                   // one per connecting arc
    std::vector<std::vector<int>> per_ap;   // N_{k,i} per phasing orbit per AP

    int sum_at(int ap) const {
        int s = 0;
        for (int n : per_ap[ap]) s += n;
        return s;
    }
};

/// Ordered (alpha, period) pairs realizing one family member.
struct PhasingLadder {
    std::vector<std::vector<std::pair<double, double>>> per_ap;  // (alpha, T [s])
};

struct FeasibleSpace {
    std::vector<std::pair<double, double>> bounds;  // per-AP real bounds on sum N
    std::vector<std::vector<int>> points;           // feasible integer tuples
    std::size_t count = 0;
};

/// A fully scheduled multi-impulse member of a solution family.
struct AssembledSolution {
    ImpulseSchedule schedule;
    double mission_time = 0.0;  // reconstituted from the segment sum [s]
    double dv_total = 0.0;      // [km/s]
};

struct RealizedMember {
    SolutionFamily family;
    PhasingLadder ladder;
    AssembledSolution assembled;
};

/// Anchor positions of a base solution, one per impulse.
std::vector<AnchorPosition> anchors_from_base(const BaseSolution& base,
                                              const CentralBody& body);

/// Budget with the given whole-revolution commitments.
TimeBudget make_budget(double mission_time, const BaseSolution& base,
                       const CentralBody& body, int n0 = 0, int nf = 0,
                       std::vector<int> npf = {});

/// Orbital period of the phasing orbit entered with the fraction alpha of the
/// AP impulse (energy equation). Throws UnboundOrbitError if the intermediate
/// orbit escapes.
double period_from_alpha(const AnchorPosition& ap, double alpha,
                         const CentralBody& body);

/// Inverse of period_from_alpha: the admissible root of the impulse-fraction
/// quadratic. `previous_alpha` selects the branch by ladder continuity when
/// both roots are admissible.
double alpha_from_period(const AnchorPosition& ap, double period,
                         const CentralBody& body,
                         std::optional<double> previous_alpha = std::nullopt);

struct FeasibilityBounds {
    bool feasible = false;
    std::vector<std::pair<double, double>> per_ap;  // (lower, upper) on sum N
};

/// Two-sided bounds on the per-AP total revolutions, anchored at the first AP,
/// with the other APs' totals held at the skeleton values (default 1 each).
FeasibilityBounds feasibility_bounds(const std::vector<AnchorPosition>& anchors,
                                     const TimeBudget& budget,
                                     const std::vector<int>& skeleton = {});

/// All integer tuples (sum N per AP, each >= 1) satisfying the two-sided
/// time-feasibility inequality.
FeasibleSpace enumerate_feasible_space(const std::vector<AnchorPosition>& anchors,
                                       const TimeBudget& budget);

struct FamilyEnumeration {
    std::vector<SolutionFamily> families;
    bool truncated = false;
    double total = 0.0;  // number of families, even when truncated
};

/// All ordered compositions of each AP's revolution total into at most cap
/// phasing orbits, combined across APs.
FamilyEnumeration enumerate_families(const std::vector<int>& point,
                                     const std::vector<int>& caps,
                                     const TimeBudget& budget,
                                     std::size_t max_families = 200000);

/// Realize one family member: all but one phasing period fixed from the given
/// alpha values, the last period at `close_ap` solved from the time equality.
/// Returns nothing when the closing period falls outside its window or the
/// ordering constraint fails.
std::optional<RealizedMember> realize_member(
    const SolutionFamily& family, const BaseSolution& base,
    const std::vector<AnchorPosition>& anchors, const TimeBudget& budget,
    const std::vector<std::vector<double>>& free_alphas, const CentralBody& body,
    int close_ap = 1);

/// Sample members over a uniform grid of the free alphas.
std::vector<RealizedMember> sample_members(
    const SolutionFamily& family, const BaseSolution& base,
    const std::vector<AnchorPosition>& anchors, const TimeBudget& budget,
    int grid_resolution, const CentralBody& body, int close_ap = 1,
    std::size_t max_members = 256);

struct SplitOutcome {
    bool feasible = false;
    std::optional<RealizedMember> member;
    int kappa_suggestion = 0;  // extra target periods needed when infeasible
    SolutionFamily family;
};

/// Threshold-driven splitter: divide each AP impulse into equal-magnitude
/// sub-impulses no larger than dv_max and look for a time-feasible member.
SplitOutcome split_for_dv_max(const BaseSolution& base,
                              const std::vector<AnchorPosition>& anchors,
                              const TimeBudget& budget, double dv_max,
                              const CentralBody& body, int kappa_max = 100);

}  // namespace isoimp
