#include "isoimp/primer.hpp"

#include <cmath>

#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"

namespace isoimp {

namespace {
constexpr double kExtremalTol = 1e-6;
}

ImpulseSchedule schedule_from_base(const BaseSolution& base) {
    ImpulseSchedule sched;
    sched.impulses = base.impulses;
    sched.pre_states = base.ap_states;
    return sched;
}

std::vector<Eigen::Vector3d> boundary_conditions(const ImpulseSchedule& sched) {
    if (sched.impulses.size() < 2) {
        throw ConfigError("primer: the construction needs at least two impulses");
    }
    std::vector<Eigen::Vector3d> units;
    units.reserve(sched.impulses.size());
    for (const Impulse& imp : sched.impulses) {
        if (!(imp.mag > 0.0)) {
            throw ConfigError("primer: zero-magnitude impulse has no direction");
        }
        units.push_back(imp.dv / imp.mag);
    }
    return units;
}

PrimerHistory primer_history(const ImpulseSchedule& sched, int n_samples,
                             const CentralBody& body) {
    const auto units = boundary_conditions(sched);
    const int n_arcs = static_cast<int>(sched.impulses.size()) - 1;
    PrimerHistory hist;

    for (int arc = 0; arc < n_arcs; ++arc) {
        const double ta = sched.impulses[arc].t;
        const double tb = sched.impulses[arc + 1].t;
        const double span = tb - ta;
        if (!(span > 0.0)) {
            throw ConfigError("primer: impulse epochs must be strictly increasing");
        }
        // post-impulse state at the head of the arc
        StateVector s0 = sched.pre_states[arc];
        s0.v += sched.impulses[arc].dv;
        s0.t = ta;

        const Eigen::Vector3d& ua = units[arc];
        const Eigen::Vector3d& ub = units[arc + 1];

        // p(tb) = Phi_rr ua + Phi_rv pdot_a; full-revolution arcs make Phi_rv
        // singular but keep the system consistent, so use a least-squares solve
        const Stm phi_ab = stm(s0, span, body);
        const Eigen::Matrix3d rr = phi_ab.drdr0();
        const Eigen::Matrix3d rv = phi_ab.drdv0();
        const Eigen::Vector3d rhs = ub - rr * ua;
        const Eigen::Vector3d pdot_a = rv.completeOrthogonalDecomposition().solve(rhs);
        if ((rv * pdot_a - rhs).norm() > 1e-6) {
            throw GeometryError("primer: singular endpoint-matching system on an arc");
        }

        for (int k = 0; k <= n_samples; ++k) {
            const double tau = span * k / n_samples;
            const Stm phi = (k == 0) ? Stm{Eigen::Matrix<double, 6, 6>::Identity()}
                            : (k == n_samples ? phi_ab : stm(s0, tau, body));
            const Eigen::Vector3d p = phi.drdr0() * ua + phi.drdv0() * pdot_a;
            const double mag = p.norm();
            hist.samples.emplace_back(ta + tau, mag);
            const bool interior = k > 0 && k < n_samples;
            if (interior) {
                hist.max_interior = std::max(hist.max_interior, mag);
                if (mag > 1.0 + kExtremalTol) {
                    if (hist.violation_times.empty() ||
                        hist.violation_times.back() != ta + tau) {
                        hist.violation_times.push_back(ta + tau);
                    }
                }
            }
        }
    }

    hist.extremal = hist.max_interior <= 1.0 + kExtremalTol;
    return hist;
}

PrimerHistory primer_history(const BaseSolution& base, int n_samples,
                             const CentralBody& body) {
    return primer_history(schedule_from_base(base), n_samples, body);
}

}  // namespace isoimp
