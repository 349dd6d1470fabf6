#include "isoimp/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"
#include "isoimp/state.hpp"

namespace isoimp {

namespace {

constexpr double kAlphaWindowTol = 1e-12;

double period_of_velocity(const Eigen::Vector3d& r, const Eigen::Vector3d& v,
                          const CentralBody& body) {
    return period_from_state({r, v, 0.0}, body);
}

}  // namespace

std::vector<AnchorPosition> anchors_from_base(const BaseSolution& base,
                                              const CentralBody& body) {
    std::vector<AnchorPosition> anchors;
    anchors.reserve(base.impulses.size());
    for (std::size_t i = 0; i < base.impulses.size(); ++i) {
        AnchorPosition ap;
        ap.index = static_cast<int>(i) + 1;
        ap.state_pre = base.ap_states[i];
        ap.dv_total_ap = base.impulses[i].dv;
        ap.T_alpha0 = period_of_velocity(ap.state_pre.r, ap.state_pre.v, body);
        ap.T_alpha1 =
            period_of_velocity(ap.state_pre.r, ap.state_pre.v + ap.dv_total_ap, body);
        ap.energy_increasing = ap.T_alpha1 >= ap.T_alpha0;
        anchors.push_back(ap);
    }
    return anchors;
}

TimeBudget make_budget(double mission_time, const BaseSolution& base,
                       const CentralBody& body, int n0, int nf,
                       std::vector<int> npf) {
    if (npf.empty()) npf.assign(base.t_pf_arcs.size(), 0);
    if (npf.size() != base.t_pf_arcs.size()) {
        throw ConfigError("budget: one arc revolution count per connecting arc required");
    }
    TimeBudget b;
    b.mission_time = mission_time;
    b.base_coast = base.coast_total();
    b.tof = mission_time - b.base_coast;
    b.n0 = n0;
    b.nf = nf;
    b.npf = npf;

    // terminal-orbit periods from the AP states themselves
    const double t0 = period_of_velocity(base.ap_states.front().r,
                                         base.ap_states.front().v, body);
    StateVector last = base.ap_states.back();
    last.v += base.impulses.back().dv;
    const double tf = period_of_velocity(last.r, last.v, body);

    b.tof_p = b.tof - n0 * t0 - nf * tf;
    for (std::size_t j = 0; j < npf.size(); ++j) {
        b.tof_p -= npf[j] * base.T_pf_periods[j];
    }
    return b;
}

double period_from_alpha(const AnchorPosition& ap, double alpha,
                         const CentralBody& body) {
    if (alpha < -kAlphaWindowTol || alpha > 1.0 + kAlphaWindowTol) {
        throw ConfigError("period_from_alpha: alpha must lie in [0, 1]");
    }
    const Eigen::Vector3d v = ap.state_pre.v + alpha * ap.dv_total_ap;
    const double r = ap.state_pre.r.norm();
    const double eps = 0.5 * v.squaredNorm() - body.mu / r;
    if (eps >= 0.0) {
        throw UnboundOrbitError("period_from_alpha: intermediate orbit is unbound");
    }
    const double a = -body.mu / (2.0 * eps);
    return period_from_sma(a, body);
}

double alpha_from_period(const AnchorPosition& ap, double period,
                         const CentralBody& body,
                         std::optional<double> previous_alpha) {
    const double lo = ap.T_min() - 1e-9 * ap.T_min();
    const double hi = ap.T_max() + 1e-9 * ap.T_max();
    if (period < lo || period > hi) {
        throw InfeasibleError("alpha_from_period: period outside the AP window");
    }
    const Eigen::Vector3d& v0 = ap.state_pre.v;
    const Eigen::Vector3d& dv = ap.dv_total_ap;
    const double r = ap.state_pre.r.norm();
    const double mu = body.mu;

    // |v0 + a*dv|^2 - 2 mu / r + (4 pi^2 mu^2 / T^2)^(1/3) = 0
    const double qa = dv.squaredNorm();
    const double qb = 2.0 * v0.dot(dv);
    const double qc = v0.squaredNorm() - 2.0 * mu / r +
                      std::cbrt(4.0 * M_PI * M_PI * mu * mu / (period * period));
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
        throw InfeasibleError("alpha_from_period: no real impulse fraction for this period");
    }
    const double sq = std::sqrt(disc);
    // numerically stable pair of roots
    const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
    double r1 = q / qa;
    double r2 = (q != 0.0) ? qc / q : -qb / qa - r1;
    if (r1 > r2) std::swap(r1, r2);

    const double window = 1e-10;
    const bool ok1 = r1 >= -window && r1 <= 1.0 + window;
    const bool ok2 = r2 >= -window && r2 <= 1.0 + window;
    double alpha;
    if (ok1 && ok2) {
        // both roots admissible: stay on the branch that continues the ladder,
        // or take the smaller root for the first entry
        if (previous_alpha) {
            alpha = (std::abs(r1 - *previous_alpha) <= std::abs(r2 - *previous_alpha) &&
                     r1 >= *previous_alpha)
                        ? r1
                        : (r2 >= *previous_alpha ? r2 : r1);
        } else {
            alpha = r1;
        }
    } else if (ok1) {
        alpha = r1;
    } else if (ok2) {
        alpha = r2;
    } else {
        throw InfeasibleError("alpha_from_period: no root in [0, 1]");
    }
    // the quadratic's constant term suffers cancellation; polish the root on
    // the forward map (same arithmetic as period_from_alpha) so the round
    // trip closes to machine precision
    for (int it = 0; it < 3; ++it) {
        const Eigen::Vector3d vp = v0 + alpha * dv;
        const double eps_orbit = 0.5 * vp.squaredNorm() - mu / r;
        if (eps_orbit >= 0.0) break;
        const double a_sma = -mu / (2.0 * eps_orbit);
        const double t_here = period_from_sma(a_sma, body);
        // dT/dalpha = (3/2)(T/a) * (da/deps) * (deps/dalpha)
        const double dtda = 1.5 * t_here / a_sma * mu / (2.0 * eps_orbit * eps_orbit) *
                            vp.dot(dv);
        if (dtda == 0.0 || !std::isfinite(dtda)) break;
        const double step = (t_here - period) / dtda;
        if (!std::isfinite(step)) break;
        alpha -= step;
    }
    return std::min(1.0, std::max(0.0, alpha));
}

FeasibilityBounds feasibility_bounds(const std::vector<AnchorPosition>& anchors,
                                     const TimeBudget& budget,
                                     const std::vector<int>& skeleton) {
    const std::size_t na = anchors.size();
    std::vector<int> skel = skeleton.empty() ? std::vector<int>(na, 1) : skeleton;
    if (skel.size() != na) {
        throw ConfigError("feasibility_bounds: one skeleton entry per anchor required");
    }

    FeasibilityBounds out;
    out.per_ap.assign(na, {0.0, 0.0});

    // anchored form of the two-sided inequality:
    //   T1_min <= (TOF_p - sum_{i>=2} N_i T_i_min) / sumN_1 <= T1_max
    const double t1min = anchors[0].T_min();
    const double t1max = anchors[0].T_max();

    double others_min = 0.0;
    for (std::size_t i = 1; i < na; ++i) others_min += skel[i] * anchors[i].T_min();

    const double l1 = budget.tof_p - others_min;
    out.per_ap[0] = {l1 / t1max, l1 / t1min};

    for (std::size_t i = 1; i < na; ++i) {
        double rest = 0.0;
        for (std::size_t j = 1; j < na; ++j) {
            if (j != i) rest += skel[j] * anchors[j].T_min();
        }
        const double upper = (budget.tof_p - skel[0] * t1min - rest) / anchors[i].T_min();
        const double lower = (budget.tof_p - skel[0] * t1max - rest) / anchors[i].T_min();
        out.per_ap[i] = {lower, upper};
    }

    out.feasible = true;
    for (const auto& [lo, hi] : out.per_ap) {
        if (hi < 1.0 || hi < lo) out.feasible = false;
    }
    if (budget.tof_p <= 0.0) out.feasible = false;
    if (!out.feasible) out.per_ap.clear();
    return out;
}

FeasibleSpace enumerate_feasible_space(const std::vector<AnchorPosition>& anchors,
                                       const TimeBudget& budget) {
    FeasibleSpace space;
    const FeasibilityBounds bounds = feasibility_bounds(anchors, budget);
    if (!bounds.feasible) return space;
    space.bounds = bounds.per_ap;

    const std::size_t na = anchors.size();
    const double t1min = anchors[0].T_min();
    const double t1max = anchors[0].T_max();

    // first-AP range for a given remaining budget; candidates come from
    // ceil/floor and each point is kept only if the exact inequality holds
    auto push_points = [&](double remaining, const std::vector<int>& others) {
        if (remaining < t1min) return;
        const int n_lo = std::max(1, static_cast<int>(std::ceil(remaining / t1max)) - 1);
        const int n_hi = static_cast<int>(std::floor(remaining / t1min)) + 1;
        for (int n1 = n_lo; n1 <= n_hi; ++n1) {
            if (n1 * t1min <= remaining && remaining <= n1 * t1max) {
                std::vector<int> tuple(na);
                tuple[0] = n1;
                for (std::size_t i = 1; i < na; ++i) tuple[i] = others[i];
                space.points.push_back(std::move(tuple));
            }
        }
    };

    if (na == 1) {
        push_points(budget.tof_p, {});
    } else {
        // nested loops over the trailing APs, each at least one revolution
        std::vector<int> others(na, 1);
        std::function<void(std::size_t, double)> recurse = [&](std::size_t i,
                                                               double remaining) {
            if (i == na) {
                push_points(remaining, others);
                return;
            }
            const double ti = anchors[i].T_min();
            for (int n = 1; remaining - n * ti >= t1min; ++n) {
                others[i] = n;
                recurse(i + 1, remaining - n * ti);
            }
            others[i] = 1;
        };
        recurse(1, budget.tof_p);
    }

    std::sort(space.points.begin(), space.points.end());
    space.count = space.points.size();
    return space;
}

namespace {

void compositions_of(int n, int cap, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
    if (n == 0) {
        if (!prefix.empty()) out.push_back(prefix);
        return;
    }
    if (static_cast<int>(prefix.size()) == cap) return;
    for (int first = n; first >= 1; --first) {
        prefix.push_back(first);
        compositions_of(n - first, cap, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

FamilyEnumeration enumerate_families(const std::vector<int>& point,
                                     const std::vector<int>& caps,
                                     const TimeBudget& budget,
                                     std::size_t max_families) {
    if (point.size() != caps.size()) {
        throw ConfigError("enumerate_families: one cap per anchor required");
    }
    std::vector<std::vector<std::vector<int>>> per_ap_comps(point.size());
    double total = 1.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
        std::vector<int> prefix;
        compositions_of(point[i], caps[i], prefix, per_ap_comps[i]);
        total *= static_cast<double>(per_ap_comps[i].size());
    }

    FamilyEnumeration out;
    out.total = total;

    std::vector<std::size_t> idx(point.size(), 0);
    while (true) {
        if (out.families.size() >= max_families) {
            out.truncated = true;
            break;
        }
        SolutionFamily fam;
        fam.n0 = budget.n0;
        fam.nf = budget.nf;
        fam.npf = budget.npf;
        fam.per_ap.resize(point.size());
        for (std::size_t i = 0; i < point.size(); ++i) {
            fam.per_ap[i] = per_ap_comps[i][idx[i]];
        }
        out.families.push_back(std::move(fam));

        // odometer increment
        std::size_t k = point.size();
        while (k > 0) {
            --k;
            if (++idx[k] < per_ap_comps[k].size()) break;
            idx[k] = 0;
            if (k == 0) return out;
        }
        if (k == 0 && idx[0] == 0) break;
    }
    return out;
}

std::optional<RealizedMember> realize_member(
    const SolutionFamily& family, const BaseSolution& base,
    const std::vector<AnchorPosition>& anchors, const TimeBudget& budget,
    const std::vector<std::vector<double>>& free_alphas, const CentralBody& body,
    int close_ap) {
    const std::size_t na = anchors.size();
    if (family.per_ap.size() != na || free_alphas.size() != na) {
        throw ConfigError("realize_member: family and alpha lists must match the anchors");
    }
    std::vector<int> npf = family.npf;
    if (npf.empty()) npf.assign(base.t_pf_arcs.size(), 0);
    if (npf.size() != base.t_pf_arcs.size()) {
        throw ConfigError("realize_member: one arc revolution count per connecting arc");
    }
    const std::size_t ci = static_cast<std::size_t>(close_ap - 1);
    if (ci >= na || family.per_ap[ci].empty()) {
        throw ConfigError("realize_member: the closing AP must carry a phasing orbit");
    }
    for (std::size_t i = 0; i < na; ++i) {
        const std::size_t need =
            family.per_ap[i].size() - (i == ci ? 1 : 0);
        if (free_alphas[i].size() != need) {
            throw ConfigError("realize_member: wrong number of free alphas at an AP");
        }
    }

    // periods of every non-closing orbit from the chosen alphas
    PhasingLadder ladder;
    ladder.per_ap.resize(na);
    double spent = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        const auto& revs = family.per_ap[i];
        const std::size_t n_free = free_alphas[i].size();
        double prev = 0.0;
        for (std::size_t k = 0; k < n_free; ++k) {
            const double a = free_alphas[i][k];
            if (!(a > prev) || !(a < 1.0)) return std::nullopt;
            double period;
            try {
                period = period_from_alpha(anchors[i], a, body);
            } catch (const UnboundOrbitError&) {
                return std::nullopt;
            }
            ladder.per_ap[i].emplace_back(a, period);
            spent += revs[k] * period;
            prev = a;
        }
    }

    // the last orbit at the closing AP balances the time equality
    const int n_close = family.per_ap[ci].back();
    const double t_close = (budget.tof_p - spent) / n_close;
    const AnchorPosition& cap_anchor = anchors[ci];
    if (!(t_close > 0.0) || t_close < cap_anchor.T_min() - 1e-9 ||
        t_close > cap_anchor.T_max() + 1e-9) {
        return std::nullopt;  // filtered: closing period outside its window
    }
    double a_close;
    try {
        const std::optional<double> prev_alpha =
            ladder.per_ap[ci].empty() ? std::nullopt
                                      : std::optional<double>(ladder.per_ap[ci].back().first);
        a_close = alpha_from_period(cap_anchor, t_close, body, prev_alpha);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!ladder.per_ap[ci].empty() && !(a_close > ladder.per_ap[ci].back().first)) {
        return std::nullopt;  // ordering constraint failed
    }
    if (!(a_close > 0.0) || !(a_close < 1.0)) return std::nullopt;
    ladder.per_ap[ci].emplace_back(a_close, t_close);

    // assemble the full impulse schedule
    RealizedMember member;
    member.family = family;
    member.ladder = ladder;

    const double t0 = period_from_state(base.ap_states.front(), body);
    StateVector last = base.ap_states.back();
    last.v += base.impulses.back().dv;
    const double tf = period_from_state(last, body);

    double clock = base.t_c1 + family.n0 * t0;
    double dv_sum = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        const AnchorPosition& ap = anchors[i];
        const auto& rungs = ladder.per_ap[i];
        const auto& revs = family.per_ap[i];
        double alpha_prev = 0.0;
        for (std::size_t k = 0; k < rungs.size(); ++k) {
            const auto [a, period] = rungs[k];
            const Eigen::Vector3d dv = (a - alpha_prev) * ap.dv_total_ap;
            StateVector pre = ap.state_pre;
            pre.v += alpha_prev * ap.dv_total_ap;
            pre.t = clock;
            member.assembled.schedule.impulses.push_back({clock, dv, dv.norm(),
                                                          ap.index});
            member.assembled.schedule.pre_states.push_back(pre);
            dv_sum += dv.norm();
            clock += revs[k] * period;
            alpha_prev = a;
        }
        // closing sub-impulse of this AP enters the next base segment
        const Eigen::Vector3d dv = (1.0 - alpha_prev) * ap.dv_total_ap;
        StateVector pre = ap.state_pre;
        pre.v += alpha_prev * ap.dv_total_ap;
        pre.t = clock;
        member.assembled.schedule.impulses.push_back({clock, dv, dv.norm(), ap.index});
        member.assembled.schedule.pre_states.push_back(pre);
        dv_sum += dv.norm();
        if (i < base.t_pf_arcs.size()) {
            clock += base.t_pf_arcs[i] + npf[i] * base.T_pf_periods[i];
        }
    }
    clock += base.t_c2 + family.nf * tf;

    member.assembled.mission_time = clock;
    member.assembled.dv_total = dv_sum;
    return member;
}

std::vector<RealizedMember> sample_members(
    const SolutionFamily& family, const BaseSolution& base,
    const std::vector<AnchorPosition>& anchors, const TimeBudget& budget,
    int grid_resolution, const CentralBody& body, int close_ap,
    std::size_t max_members) {
    const std::size_t na = anchors.size();
    std::size_t n_free = 0;
    for (std::size_t i = 0; i < na; ++i) {
        n_free += family.per_ap[i].size() - (static_cast<int>(i) == close_ap - 1 ? 1 : 0);
    }

    std::vector<RealizedMember> members;
    if (n_free == 0) {
        auto m = realize_member(family, base, anchors, budget,
                                std::vector<std::vector<double>>(na), body, close_ap);
        if (m) members.push_back(std::move(*m));
        return members;
    }

    // uniform grid over the open interval (0, 1) per free alpha
    std::vector<int> idx(n_free, 0);
    while (members.size() < max_members) {
        std::vector<std::vector<double>> alphas(na);
        std::size_t flat = 0;
        bool regular = true;
        for (std::size_t i = 0; i < na && regular; ++i) {
            const std::size_t need =
                family.per_ap[i].size() - (static_cast<int>(i) == close_ap - 1 ? 1 : 0);
            for (std::size_t k = 0; k < need; ++k) {
                alphas[i].push_back((idx[flat] + 1.0) / (grid_resolution + 1.0));
                ++flat;
            }
            for (std::size_t k = 1; k < alphas[i].size(); ++k) {
                if (alphas[i][k] <= alphas[i][k - 1]) regular = false;
            }
        }
        if (regular) {
            auto m = realize_member(family, base, anchors, budget, alphas, body, close_ap);
            if (m) members.push_back(std::move(*m));
        }

        std::size_t k = n_free;
        bool done = true;
        while (k > 0) {
            --k;
            if (++idx[k] < grid_resolution) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done) break;
    }
    return members;
}

SplitOutcome split_for_dv_max(const BaseSolution& base,
                              const std::vector<AnchorPosition>& anchors,
                              const TimeBudget& budget, double dv_max,
                              const CentralBody& body, int kappa_max) {
    if (!(dv_max > 0.0)) throw ConfigError("split_for_dv_max: dv_max must be positive");
    const std::size_t na = anchors.size();

    StateVector last = base.ap_states.back();
    last.v += base.impulses.back().dv;
    const double tf = period_from_state(last, body);

    // minimum sub-impulse counts
    std::vector<int> pieces(na);
    bool any_split = false;
    int close_ap = 1;
    double biggest = -1.0;
    for (std::size_t i = 0; i < na; ++i) {
        const double mag = anchors[i].dv_total_ap.norm();
        pieces[i] = std::max(1, static_cast<int>(std::ceil(mag / dv_max)));
        if (pieces[i] > 1) any_split = true;
        if (pieces[i] > 1 && mag > biggest) {
            biggest = mag;
            close_ap = static_cast<int>(i) + 1;
        }
    }

    SplitOutcome out;
    if (!any_split) {
        out.feasible = true;
        out.family.n0 = budget.n0;
        out.family.nf = budget.nf;
        out.family.npf = budget.npf;
        out.family.per_ap.assign(na, {});
        return out;
    }

    for (int kappa = 0; kappa <= kappa_max; ++kappa) {
        TimeBudget b = budget;
        b.mission_time += kappa * tf;
        b.tof += kappa * tf;
        b.tof_p += kappa * tf;

        // grow the closing orbit's revolution count until its period fits
        for (int n_close = 1; n_close <= 512; ++n_close) {
            SolutionFamily fam;
            fam.n0 = b.n0;
            fam.nf = b.nf;
            fam.npf = b.npf;
            fam.per_ap.assign(na, {});
            std::vector<std::vector<double>> alphas(na);
            for (std::size_t i = 0; i < na; ++i) {
                const int np = pieces[i] - 1;
                fam.per_ap[i].assign(np, 1);
                const int n_alpha = np - (static_cast<int>(i) == close_ap - 1 ? 1 : 0);
                for (int k = 1; k <= n_alpha; ++k) {
                    alphas[i].push_back(static_cast<double>(k) / pieces[i]);
                }
            }
            if (fam.per_ap[close_ap - 1].empty()) break;
            fam.per_ap[close_ap - 1].back() = n_close;

            std::optional<RealizedMember> m;
            try {
                m = realize_member(fam, base, anchors, b, alphas, body, close_ap);
            } catch (const std::exception&) {
                m.reset();
            }
            if (!m) continue;
            bool compliant = true;
            for (const Impulse& imp : m->assembled.schedule.impulses) {
                if (imp.mag > dv_max * (1.0 + 1e-9)) compliant = false;
            }
            if (!compliant) continue;
            out.feasible = true;
            out.family = fam;
            out.member = std::move(m);
            out.kappa_suggestion = kappa;
            return out;
        }
    }

    out.feasible = false;
    out.kappa_suggestion = kappa_max;
    out.family.per_ap.assign(na, {});
    return out;
}

}  // namespace isoimp
