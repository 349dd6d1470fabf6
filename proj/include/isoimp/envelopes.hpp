#pragma once

#include <string>
#include <vector>

#include "isoimp/allocation.hpp"
#include "isoimp/simplex.hpp"

namespace isoimp {

/// Everything the envelope construction needs: the phasing-time budget, the
/// per-AP period windows, and the family's revolution counts.
struct EnvelopeProblem {
    double tof_p = 0.0;                              // [s]
    std::vector<std::pair<double, double>> windows;  // per-AP (T_min, T_max) [s]
    std::vector<std::vector<int>> per_ap;            // N_{k,i}
};

EnvelopeProblem make_envelope_problem(const SolutionFamily& family,
                                      const std::vector<AnchorPosition>& anchors,
                                      const TimeBudget& budget);

/// Polygonal region of admissible (T_{1,1}, T_{k,i}) pairs for one phasing
/// orbit of a family. Corners are ordered counter-clockwise starting from the
/// left edge's lower corner.
struct Envelope {
    int ap_index = 0;      // i, 1-based
    int ladder_index = 0;  // k, 1-based
    std::vector<std::pair<double, double>> corners;  // (T11, Tki) [s]
    bool has_extra_upper_corner = false;  // corner "4"
    bool has_extra_lower_corner = false;  // corner "5"

    double area() const;  // shoelace
};

/// Analytic corner construction for every phasing orbit of the family.
/// A family whose single phasing orbit is the budget-closing one degenerates
/// to a segment on the T11 axis (two corners).
std::vector<Envelope> envelope_corners(const EnvelopeProblem& prob);

/// Largest admissible first phasing-orbit period (the rightmost corner).
double envelope_t11_max(const EnvelopeProblem& prob);

/// LP over all phasing periods: the equality budget, per-AP ordering chains,
/// and window boxes. Objective: +/- one coordinate; `pin_t11` / `pin_orbit`
/// add equality pins used for corner verification.
struct EnvelopeLpSpec {
    int objective_ap = 1;      // 1-based
    int objective_ladder = 1;  // 1-based
    bool maximize = false;
    std::optional<double> pin_t11;
    std::optional<std::pair<std::pair<int, int>, double>> pin_orbit;  // ((ap,k), value)
};
LpProblem envelope_lp(const EnvelopeProblem& prob, const EnvelopeLpSpec& spec);

struct EnvelopeVerification {
    std::size_t corners_checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Reproduce every analytic corner with an appropriately pinned LP.
EnvelopeVerification verify_envelopes(const EnvelopeProblem& prob,
                                      const std::vector<Envelope>& envelopes,
                                      double rel_tol = 1e-8);

}  // namespace isoimp
