#include "isoimp/kepler.hpp"

#include <cfloat>
#include <cmath>

#include "isoimp/errors.hpp"

namespace isoimp {

namespace {
constexpr double kTau = 2.0 * M_PI;
constexpr int kMaxIter = 60;
}  // namespace

void stumpff(double z, double& c2, double& c3) {
    if (std::abs(z) < 1e-5) {
        c2 = 1.0 / 2.0 - z / 24.0 + z * z / 720.0;
        c3 = 1.0 / 6.0 - z / 120.0 + z * z / 5040.0;
    } else if (z > 0.0) {
        const double sz = std::sqrt(z);
        c2 = (1.0 - std::cos(sz)) / z;
        c3 = (sz - std::sin(sz)) / (z * sz);
    } else {
        const double sz = std::sqrt(-z);
        c2 = (std::cosh(sz) - 1.0) / (-z);
        c3 = (std::sinh(sz) - sz) / (-z * sz);
    }
}

namespace {

struct KeplerSolution {
    double chi;       // universal anomaly
    double z;         // alpha * chi^2
    double c2, c3;
    double f, g, fdot, gdot;
    double r1n;       // radius at the end of the arc
};

// Solve the universal Kepler equation for a bound orbit over time t >= 0.
// alpha = 1/a > 0. Newton with a bisection safeguard on a bracket that is
// widened by whole revolutions as needed.
KeplerSolution kepler_solve(double r0n, double sigma0, double alpha, double t,
                            double mu) {
    const double sqrt_mu = std::sqrt(mu);
    const double sqrt_a = 1.0 / std::sqrt(alpha);
    const double period = kTau * sqrt_a / (sqrt_mu * alpha);  // 2*pi*sqrt(a^3/mu)

    const double revs = std::floor(t / period);
    double lo = revs * kTau * sqrt_a;
    double hi = (revs + 1.0) * kTau * sqrt_a;

    double chi = sqrt_mu * t * alpha;  // exact for circular, good elsewhere
    if (chi < lo || chi > hi) chi = 0.5 * (lo + hi);

    const double tol = std::max(1e-12, 8.0 * DBL_EPSILON * hi);
    double c2 = 0.0, c3 = 0.0, z = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxIter; ++it) {
        z = alpha * chi * chi;
        stumpff(z, c2, c3);
        const double chi2 = chi * chi;
        const double fval = sigma0 * chi2 * c2 +
                            (1.0 - r0n * alpha) * chi2 * chi * c3 + r0n * chi -
                            sqrt_mu * t;
        const double dval = sigma0 * chi * (1.0 - z * c3) +
                            (1.0 - r0n * alpha) * chi2 * c2 + r0n;  // = r(chi)
        if (fval > 0.0) {
            hi = chi;
        } else {
            lo = chi;
        }
        if (fval == 0.0) {
            converged = true;
            break;
        }
        double step = fval / dval;
        double next = chi - step;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);  // bisection fallback
        const double moved = std::abs(next - chi);
        chi = next;
        if (moved < tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw ConvergenceError("kepler: universal anomaly iteration did not converge");
    }

    z = alpha * chi * chi;
    stumpff(z, c2, c3);
    KeplerSolution sol;
    sol.chi = chi;
    sol.z = z;
    sol.c2 = c2;
    sol.c3 = c3;
    sol.f = 1.0 - chi * chi * c2 / r0n;
    sol.g = t - chi * chi * chi * c3 / sqrt_mu;
    sol.r1n = sigma0 * chi * (1.0 - z * c3) +
              (1.0 - r0n * alpha) * chi * chi * c2 + r0n;
    sol.fdot = sqrt_mu / (sol.r1n * r0n) * chi * (z * c3 - 1.0);
    sol.gdot = 1.0 - chi * chi * c2 / sol.r1n;
    return sol;
}

}  // namespace

StateVector propagate(const StateVector& s, double dt, const CentralBody& body) {
    const double eps = specific_energy(s, body);
    if (eps >= 0.0) {
        throw UnboundOrbitError("propagate: orbit is not bound (energy >= 0)");
    }
    const double a = -body.mu / (2.0 * eps);
    const double alpha = 1.0 / a;
    const double period = period_from_sma(a, body);

    // the state is periodic, so reduce to one revolution
    double t = std::fmod(dt, period);
    if (t < 0.0) t += period;
    if (t == 0.0) {
        StateVector out = s;
        out.t = s.t + dt;
        return out;
    }

    const double r0n = s.r.norm();
    const double sigma0 = s.r.dot(s.v) / std::sqrt(body.mu);
    const KeplerSolution k = kepler_solve(r0n, sigma0, alpha, t, body.mu);

    StateVector out;
    out.r = k.f * s.r + k.g * s.v;
    out.v = k.fdot * s.r + k.gdot * s.v;
    out.t = s.t + dt;
    return out;
}

namespace {

Stm stm_analytic(const StateVector& s, double dt, const CentralBody& body) {
    const double mu = body.mu;
    const double eps = specific_energy(s, body);
    if (eps >= 0.0) {
        throw UnboundOrbitError("stm: orbit is not bound (energy >= 0)");
    }
    if (dt == 0.0) {
        return {Eigen::Matrix<double, 6, 6>::Identity()};
    }
    // the secular term needs the unreduced time; solve over |dt| directly
    const bool backward = dt < 0.0;
    const StateVector& base = backward ? propagate(s, dt, body) : s;
    const double t = std::abs(dt);
    // for a backward arc, compute the forward map from the earlier state and invert
    const StateVector from = backward ? StateVector{base.r, base.v, 0.0}
                                      : StateVector{s.r, s.v, 0.0};

    const double r0n = from.r.norm();
    const double alpha = 1.0 / (-mu / (2.0 * (0.5 * from.v.squaredNorm() - mu / r0n)));
    const double sqrt_mu = std::sqrt(mu);
    const double sigma0 = from.r.dot(from.v) / sqrt_mu;
    const KeplerSolution k = kepler_solve(r0n, sigma0, alpha, t, mu);

    const Eigen::Vector3d r1 = k.f * from.r + k.g * from.v;
    const Eigen::Vector3d v1 = k.fdot * from.r + k.gdot * from.v;
    const double r1n = k.r1n;

    // universal functions U2..U5 and the secular coefficient
    const double u2 = r0n * (1.0 - k.f);
    const double u3 = sqrt_mu * (t - k.g);
    const double u4 = (k.chi * k.chi / 2.0 - u2) / alpha;
    const double u5 = (k.chi * k.chi * k.chi / 6.0 - u3) / alpha;
    const double cc = (3.0 * u5 - k.chi * u4 - sqrt_mu * t * u2) / sqrt_mu;

    const double r0n3 = r0n * r0n * r0n;
    const double r1n3 = r1n * r1n * r1n;
    const Eigen::Vector3d dv = v1 - from.v;
    const Eigen::Matrix3d eye = Eigen::Matrix3d::Identity();

    const Eigen::Matrix3d drdr0 =
        r1n / mu * dv * dv.transpose() +
        (r0n * (1.0 - k.f) * r1 * from.r.transpose() + cc * v1 * from.r.transpose()) / r0n3 +
        k.f * eye;
    const Eigen::Matrix3d drdv0 =
        r0n / mu * (1.0 - k.f) *
            ((r1 - from.r) * from.v.transpose() - dv * from.r.transpose()) +
        cc / mu * v1 * from.v.transpose() + k.g * eye;
    const Eigen::Matrix3d dvdv0 =
        r0n / mu * dv * dv.transpose() +
        (r0n * (1.0 - k.f) * r1 * from.r.transpose() - cc * r1 * from.v.transpose()) / r1n3 +
        k.gdot * eye;
    const Eigen::Matrix3d dvdr0 =
        -dv * from.r.transpose() / (r0n * r0n) - r1 * dv.transpose() / (r1n * r1n) +
        k.fdot * (eye - r1 * r1.transpose() / (r1n * r1n) +
                  (r1 * v1.transpose() - v1 * r1.transpose()) * r1 * dv.transpose() /
                      (mu * r1n)) -
        mu * cc * r1 * from.r.transpose() / (r1n3 * r0n3);

    Stm phi;
    phi.m.block<3, 3>(0, 0) = drdr0;
    phi.m.block<3, 3>(0, 3) = drdv0;
    phi.m.block<3, 3>(3, 0) = dvdr0;
    phi.m.block<3, 3>(3, 3) = dvdv0;
    if (backward) {
        phi.m = phi.m.inverse().eval();
    }
    return phi;
}

Stm stm_finite_difference(const StateVector& s, double dt, const CentralBody& body) {
    Stm phi;
    const double hr = 2e-5 * std::max(1.0, s.r.norm());
    const double hv = 2e-5 * std::max(1.0, s.v.norm());

    auto column = [&](int j, double h) {
        StateVector plus = s, minus = s;
        if (j < 3) {
            plus.r[j] += h;
            minus.r[j] -= h;
        } else {
            plus.v[j - 3] += h;
            minus.v[j - 3] -= h;
        }
        const StateVector sp = propagate(plus, dt, body);
        const StateVector sm = propagate(minus, dt, body);
        Eigen::Matrix<double, 6, 1> col;
        for (int i = 0; i < 3; ++i) {
            col[i] = (sp.r[i] - sm.r[i]) / (2.0 * h);
            col[i + 3] = (sp.v[i] - sm.v[i]) / (2.0 * h);
        }
        return col;
    };

    for (int j = 0; j < 6; ++j) {
        const double h = j < 3 ? hr : hv;
        // Richardson extrapolation knocks out the leading truncation term
        const Eigen::Matrix<double, 6, 1> coarse = column(j, h);
        const Eigen::Matrix<double, 6, 1> fine = column(j, 0.5 * h);
        phi.m.col(j) = (4.0 * fine - coarse) / 3.0;
    }
    return phi;
}

}  // namespace

Stm stm(const StateVector& s, double dt, const CentralBody& body, StmMethod method) {
    return method == StmMethod::Analytic ? stm_analytic(s, dt, body)
                                         : stm_finite_difference(s, dt, body);
}

}  // namespace isoimp
