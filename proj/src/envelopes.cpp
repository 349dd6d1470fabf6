#include "isoimp/envelopes.hpp"

#include <cmath>
#include <sstream>

#include "isoimp/errors.hpp"

namespace isoimp {

namespace {

double window_lo(const EnvelopeProblem& p, int ap) { return p.windows[ap].first; }
double window_hi(const EnvelopeProblem& p, int ap) { return p.windows[ap].second; }

// total committed time of AP `ap` with every orbit at the window bound
double ap_all_at(const EnvelopeProblem& p, int ap, double value) {
    double s = 0.0;
    for (int n : p.per_ap[ap]) s += n * value;
    return s;
}

double sum_n(const EnvelopeProblem& p, int ap, int from_k, int to_k) {
    double s = 0.0;
    for (int k = from_k; k <= to_k; ++k) s += p.per_ap[ap][k - 1];
    return s;
}

// other-AP commitment with every orbit at its window min (c2-style) or
// max (c1-style); `skip` is the AP whose envelope is being built, 0-based
double others_at(const EnvelopeProblem& p, int skip, bool at_max) {
    double s = 0.0;
    for (int i = 1; i < static_cast<int>(p.per_ap.size()); ++i) {
        if (i == skip) continue;
        s += ap_all_at(p, i, at_max ? window_hi(p, i) : window_lo(p, i));
    }
    return s;
}

}  // namespace

EnvelopeProblem make_envelope_problem(const SolutionFamily& family,
                                      const std::vector<AnchorPosition>& anchors,
                                      const TimeBudget& budget) {
    EnvelopeProblem prob;
    prob.tof_p = budget.tof_p;
    prob.per_ap = family.per_ap;
    for (const AnchorPosition& ap : anchors) {
        prob.windows.emplace_back(ap.T_min(), ap.T_max());
    }
    return prob;
}

double Envelope::area() const {
    double twice = 0.0;
    const std::size_t n = corners.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [x1, y1] = corners[i];
        const auto& [x2, y2] = corners[(i + 1) % n];
        twice += x1 * y2 - x2 * y1;
    }
    return 0.5 * std::abs(twice);
}

double envelope_t11_max(const EnvelopeProblem& prob) {
    // all first-AP periods equal, every other orbit at its window minimum
    const double c2 = others_at(prob, 0, false);
    const double raw = (prob.tof_p - c2) / sum_n(prob, 0, 1, prob.per_ap[0].size());
    return std::min(raw, window_hi(prob, 0));
}

std::vector<Envelope> envelope_corners(const EnvelopeProblem& prob) {
    const int na = static_cast<int>(prob.per_ap.size());
    const int np1 = static_cast<int>(prob.per_ap[0].size());
    const double t0 = window_lo(prob, 0);
    const double w1_hi = window_hi(prob, 0);
    const double t11max = envelope_t11_max(prob);

    std::vector<Envelope> envelopes;
    if (t11max < t0) return envelopes;  // family not time-feasible

    bool any_other = false;
    for (int i = 1; i < na; ++i) any_other |= !prob.per_ap[i].empty();
    if (np1 == 1 && !any_other) {
        // one free orbit: the admissible set is a segment on the T11 axis
        Envelope env;
        env.ap_index = 1;
        env.ladder_index = 1;
        env.corners = {{t0, t0}, {t11max, t11max}};
        envelopes.push_back(env);
        return envelopes;
    }

    const double c1 = others_at(prob, 0, true);   // other APs at window max
    const double c2 = others_at(prob, 0, false);  // other APs at window min

    // ---- first AP, orbits j = 2..np1 ----
    for (int j = 2; j <= np1; ++j) {
        Envelope env;
        env.ap_index = 1;
        env.ladder_index = j;

        // corner 1: minimum at T11 = T0 (later orbits at window max, other APs at max)
        const double tail_max = sum_n(prob, 0, j + 1, np1) * w1_hi;
        const double y_min_raw =
            (prob.tof_p - prob.per_ap[0][0] * t0 - tail_max - c1) / sum_n(prob, 0, 2, j);
        const double y1 = std::max(y_min_raw, t0);
        env.has_extra_lower_corner = y_min_raw > t0 + 1e-9;

        // corner 2: maximum at T11 = T0 (earlier orbits at T0, other APs at min)
        const double head_min = sum_n(prob, 0, 1, j - 1) * t0;
        const double y_max_raw = (prob.tof_p - head_min - c2) / sum_n(prob, 0, j, np1);
        const double y2 = std::min(y_max_raw, w1_hi);
        env.has_extra_upper_corner = y_max_raw > w1_hi + 1e-9;

        env.corners.push_back({t0, y1});
        if (env.has_extra_lower_corner) {
            // the lower boundary meets the diagonal where orbit j is globally minimal
            const double x5 = (prob.tof_p - sum_n(prob, 0, j + 1, np1) * w1_hi - c1) /
                              sum_n(prob, 0, 1, j);
            env.corners.push_back({x5, x5});
        }
        env.corners.push_back({t11max, t11max});  // corner 3: total collapse
        if (env.has_extra_upper_corner) {
            // largest T11 with orbit j (and everything above it) at the window top;
            // the j = np1 and j < np1 readings of the formula agree term by term
            const double x4 =
                (prob.tof_p - sum_n(prob, 0, j, np1) * w1_hi - c2) / sum_n(prob, 0, 1, j - 1);
            env.corners.push_back({x4, w1_hi});
        }
        env.corners.push_back({t0, y2});
        envelopes.push_back(std::move(env));
    }

    // ---- second and third APs, orbits j = 1..np_i ----
    for (int i = 1; i < na; ++i) {
        const int np = static_cast<int>(prob.per_ap[i].size());
        if (np == 0) continue;
        const double wlo = window_lo(prob, i);
        const double whi = window_hi(prob, i);
        // first-AP commitments: all at T0, or T11 at T0 with the tail at the top
        const double ap1_min_spend = sum_n(prob, 0, 1, np1) * t0;
        const double ap1_max_spend =
            prob.per_ap[0][0] * t0 + sum_n(prob, 0, 2, np1) * w1_hi;
        // remaining APs (neither the first nor this one)
        double mid_min = 0.0, mid_max = 0.0;
        for (int q = 1; q < na; ++q) {
            if (q == i) continue;
            mid_min += ap_all_at(prob, q, window_lo(prob, q));
            mid_max += ap_all_at(prob, q, window_hi(prob, q));
        }

        for (int j = 1; j <= np; ++j) {
            Envelope env;
            env.ap_index = i + 1;
            env.ladder_index = j;

            // corner 1: minimum at T11 = T0 (everything else maximal)
            const double tail_max = sum_n(prob, i, j + 1, np) * whi;
            const double y_min_raw =
                (prob.tof_p - tail_max - ap1_max_spend - mid_max) / sum_n(prob, i, 1, j);
            const double y1 = std::max(y_min_raw, wlo);
            env.has_extra_lower_corner = y_min_raw > wlo + 1e-9;

            // corner 2: maximum at T11 = T0 (everything else minimal)
            const double head_min = sum_n(prob, i, 1, j - 1) * wlo;
            const double y_max_raw =
                (prob.tof_p - head_min - ap1_min_spend - mid_min) / sum_n(prob, i, j, np);
            const double y2 = std::min(y_max_raw, whi);
            env.has_extra_upper_corner = y_max_raw > whi + 1e-9;

            env.corners.push_back({t0, y1});
            if (env.has_extra_lower_corner) {
                // leftmost T11 at which orbit j can reach its window floor
                const double x5 = (prob.tof_p - sum_n(prob, i, 1, j) * wlo - tail_max -
                                   mid_max - sum_n(prob, 0, 2, np1) * w1_hi) /
                                  prob.per_ap[0][0];
                env.corners.push_back({x5, wlo});
            }
            env.corners.push_back({t11max, wlo});  // corner 3
            if (env.has_extra_upper_corner) {
                // largest T11 with orbit j (and the ones above) at the window top
                const double x4 =
                    (prob.tof_p - head_min - sum_n(prob, i, j, np) * whi - mid_min) /
                    sum_n(prob, 0, 1, np1);
                env.corners.push_back({x4, whi});
            }
            env.corners.push_back({t0, y2});
            envelopes.push_back(std::move(env));
        }
    }
    return envelopes;
}

LpProblem envelope_lp(const EnvelopeProblem& prob, const EnvelopeLpSpec& spec) {
    const int na = static_cast<int>(prob.per_ap.size());
    std::vector<std::pair<int, int>> vars;  // (ap, k) 0-based
    for (int i = 0; i < na; ++i) {
        for (int k = 0; k < static_cast<int>(prob.per_ap[i].size()); ++k) {
            vars.emplace_back(i, k);
        }
    }
    const int n = static_cast<int>(vars.size());
    auto var_index = [&](int ap, int k) {
        for (int j = 0; j < n; ++j) {
            if (vars[j].first == ap && vars[j].second == k) return j;
        }
        throw ConfigError("envelope_lp: no such phasing orbit");
    };

    LpProblem lp;
    lp.c = Eigen::VectorXd::Zero(n);
    const int obj = var_index(spec.objective_ap - 1, spec.objective_ladder - 1);
    lp.c[obj] = spec.maximize ? -1.0 : 1.0;

    int n_eq = 1 + (spec.pin_t11 ? 1 : 0) + (spec.pin_orbit ? 1 : 0);
    lp.a_eq = Eigen::MatrixXd::Zero(n_eq, n);
    lp.b_eq = Eigen::VectorXd::Zero(n_eq);
    for (int j = 0; j < n; ++j) {
        lp.a_eq(0, j) = prob.per_ap[vars[j].first][vars[j].second];
    }
    lp.b_eq[0] = prob.tof_p;
    int row = 1;
    if (spec.pin_t11) {
        lp.a_eq(row, var_index(0, 0)) = 1.0;
        lp.b_eq[row] = *spec.pin_t11;
        ++row;
    }
    if (spec.pin_orbit) {
        lp.a_eq(row, var_index(spec.pin_orbit->first.first - 1,
                               spec.pin_orbit->first.second - 1)) = 1.0;
        lp.b_eq[row] = spec.pin_orbit->second;
    }

    // ordering chains within each AP
    int n_ub = 0;
    for (int i = 0; i < na; ++i) {
        n_ub += std::max(0, static_cast<int>(prob.per_ap[i].size()) - 1);
    }
    lp.a_ub = Eigen::MatrixXd::Zero(n_ub, n);
    lp.b_ub = Eigen::VectorXd::Zero(n_ub);
    row = 0;
    for (int i = 0; i < na; ++i) {
        for (int k = 0; k + 1 < static_cast<int>(prob.per_ap[i].size()); ++k) {
            lp.a_ub(row, var_index(i, k)) = 1.0;
            lp.a_ub(row, var_index(i, k + 1)) = -1.0;
            ++row;
        }
    }

    lp.lower = Eigen::VectorXd::Zero(n);
    lp.upper = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        lp.lower[j] = prob.windows[vars[j].first].first;
        lp.upper[j] = prob.windows[vars[j].first].second;
    }
    return lp;
}

namespace {

double lp_value(const EnvelopeProblem& prob, const EnvelopeLpSpec& spec) {
    const LpResult res = solve_lp(envelope_lp(prob, spec));
    if (res.status != LpStatus::Optimal) {
        throw InfeasibleError("envelope verification: pinned LP is not solvable");
    }
    return spec.maximize ? -res.value : res.value;
}

}  // namespace

EnvelopeVerification verify_envelopes(const EnvelopeProblem& prob,
                                      const std::vector<Envelope>& envelopes,
                                      double rel_tol) {
    EnvelopeVerification report;
    const double t0 = prob.windows[0].first;
    const double scale = std::max(1.0, prob.tof_p);

    auto check = [&](const char* label, const Envelope& env, double expect,
                     double got) {
        ++report.corners_checked;
        if (std::abs(expect - got) > rel_tol * std::max(scale, std::abs(expect))) {
            std::ostringstream os;
            os << "envelope (" << env.ap_index << "," << env.ladder_index << ") "
               << label << ": analytic " << expect << " vs LP " << got;
            report.mismatches.push_back(os.str());
        }
    };

    for (const Envelope& env : envelopes) {
        if (env.corners.size() == 2) {
            // degenerate segment: endpoints are T0 and max T11
            EnvelopeLpSpec lo{env.ap_index, env.ladder_index, false, {}, {}};
            EnvelopeLpSpec hi{env.ap_index, env.ladder_index, true, {}, {}};
            check("segment-lo", env, env.corners[0].first, lp_value(prob, lo));
            check("segment-hi", env, env.corners[1].first, lp_value(prob, hi));
            continue;
        }

        std::size_t idx = 0;
        // corner 1: min of the orbit with T11 pinned at T0
        {
            EnvelopeLpSpec s{env.ap_index, env.ladder_index, false, t0, {}};
            check("corner1", env, env.corners[idx].second, lp_value(prob, s));
            ++idx;
        }
        if (env.has_extra_lower_corner) {
            // corner 5: global minimum of the orbit; for the first AP the
            // corner lies on the diagonal, elsewhere pin the floor and
            // minimize T11
            if (env.ap_index == 1) {
                EnvelopeLpSpec s{env.ap_index, env.ladder_index, false, {}, {}};
                check("corner5", env, env.corners[idx].second, lp_value(prob, s));
            } else {
                EnvelopeLpSpec s{1, 1, false, {},
                                 std::make_pair(std::make_pair(env.ap_index,
                                                               env.ladder_index),
                                                env.corners[idx].second)};
                check("corner5", env, env.corners[idx].first, lp_value(prob, s));
            }
            ++idx;
        }
        // corner 3: rightmost T11
        {
            EnvelopeLpSpec s{1, 1, true, {}, {}};
            check("corner3-x", env, env.corners[idx].first, lp_value(prob, s));
            EnvelopeLpSpec sy{env.ap_index, env.ladder_index, false,
                              env.corners[idx].first, {}};
            check("corner3-y", env, env.corners[idx].second, lp_value(prob, sy));
            ++idx;
        }
        if (env.has_extra_upper_corner) {
            // corner 4: max T11 with the orbit pinned at its ceiling
            EnvelopeLpSpec s{1, 1, true, {},
                             std::make_pair(std::make_pair(env.ap_index,
                                                           env.ladder_index),
                                            env.corners[idx].second)};
            check("corner4", env, env.corners[idx].first, lp_value(prob, s));
            ++idx;
        }
        // corner 2: max of the orbit with T11 pinned at T0
        {
            EnvelopeLpSpec s{env.ap_index, env.ladder_index, true, t0, {}};
            check("corner2", env, env.corners[idx].second, lp_value(prob, s));
        }
    }
    return report;
}

}  // namespace isoimp
