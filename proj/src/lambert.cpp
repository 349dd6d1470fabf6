#include "isoimp/lambert.hpp"

#include <cmath>

#include "isoimp/errors.hpp"
#include "isoimp/kepler.hpp"

namespace isoimp {

namespace {

constexpr double kTau = 2.0 * M_PI;
constexpr double kAngleGuard = 1e-6;  // rad from 0 or pi
constexpr int kMaxIter = 80;

struct Geometry {
    double r1n, r2n;
    double a_coef;  // A = sin(dtheta) * sqrt(r1n*r2n / (1 - cos(dtheta)))
    double theta;
};

// y(z) of the universal formulation; the free variable z = alpha*chi^2.
double y_of(double z, const Geometry& g) {
    double c2, c3;
    stumpff(z, c2, c3);
    return g.r1n + g.r2n + g.a_coef * (z * c3 - 1.0) / std::sqrt(c2);
}

double tof_of(double z, const Geometry& g, double mu) {
    double c2, c3;
    stumpff(z, c2, c3);
    const double y = g.r1n + g.r2n + g.a_coef * (z * c3 - 1.0) / std::sqrt(c2);
    if (y <= 0.0) return -1.0;  // outside the admissible set
    return (std::pow(y / c2, 1.5) * c3 + g.a_coef * std::sqrt(y)) / std::sqrt(mu);
}

// Monotone-safe root solve of tof(z) = tof on [zlo, zhi], where tof is
// monotone on the bracket; Newton by central difference with bisection fallback.
double solve_bracket(double zlo, double zhi, double target, const Geometry& g,
                     double mu, bool increasing) {
    double lo = zlo, hi = zhi;
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxIter; ++it) {
        const double t = tof_of(z, g, mu);
        const bool below = t >= 0.0 ? (t < target) : true;  // y<0 treated as "too small z side"
        if (below == increasing) {
            lo = z;
        } else {
            hi = z;
        }
        // derivative by small central difference; robust near stumpff switchovers
        const double h = 1e-7 * std::max(1.0, std::abs(z));
        const double tp = tof_of(z + h, g, mu);
        const double tm = tof_of(z - h, g, mu);
        double next;
        if (t >= 0.0 && tp >= 0.0 && tm >= 0.0 && tp != tm) {
            next = z - (t - target) * (2.0 * h) / (tp - tm);
        } else {
            next = 0.5 * (lo + hi);
        }
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        const double moved = std::abs(next - z);
        z = next;
        const double tz = tof_of(z, g, mu);
        if (tz >= 0.0 && std::abs(tz - target) <= 1e-13 * target) return z;
        if (moved <= 1e-15 * std::max(1.0, std::abs(z))) return z;
    }
    const double tz = tof_of(z, g, mu);
    if (tz >= 0.0 && std::abs(tz - target) <= 1e-9 * target) return z;
    throw ConvergenceError("lambert: time-of-flight iteration did not converge");
}

LambertArc build_arc(double z, const Geometry& g, const Eigen::Vector3d& r1,
                     const Eigen::Vector3d& r2, double tof, int nrev,
                     TransferPath branch, const CentralBody& body) {
    const double mu = body.mu;
    const double y = y_of(z, g);
    const double f = 1.0 - y / g.r1n;
    const double gg = g.a_coef * std::sqrt(y / mu);
    const double gdot = 1.0 - y / g.r2n;
    LambertArc arc;
    arc.r1 = r1;
    arc.r2 = r2;
    arc.tof = tof;
    arc.v1 = (r2 - f * r1) / gg;
    arc.v2 = (gdot * r2 - r1) / gg;
    arc.nrev = nrev;
    arc.branch = branch;
    arc.high_energy = false;

    // one differential-correction pass squeezes the terminal miss from the
    // iteration tolerance down to propagation accuracy (bound arcs only)
    if (0.5 * arc.v1.squaredNorm() - mu / g.r1n < 0.0) {
        try {
            const StateVector start{r1, arc.v1, 0.0};
            const StateVector hit = propagate(start, tof, body);
            const Eigen::Vector3d miss = r2 - hit.r;
            if (miss.norm() < 1e-4 * g.r2n) {
                const Stm phi = stm(start, tof, body);
                const Eigen::Vector3d dv = phi.drdv0().colPivHouseholderQr().solve(miss);
                // near-degenerate geometry can blow the correction up into a
                // plane rotation; only genuine round-off repairs are welcome
                if (dv.norm() < 1e-6) {
                    const StateVector check = propagate({r1, arc.v1 + dv, 0.0}, tof, body);
                    if ((check.r - r2).norm() < miss.norm()) {
                        arc.v1 += dv;
                        arc.v2 = check.v;
                    }
                }
            }
        } catch (const std::exception&) {
            // keep the algebraic solution
        }
    }
    return arc;
}

}  // namespace

std::vector<LambertArc> solve_lambert(const Eigen::Vector3d& r1,
                                      const Eigen::Vector3d& r2, double tof,
                                      int nrev, TransferPath branch,
                                      const CentralBody& body) {
    if (!(tof > 0.0)) throw InfeasibleError("lambert: transfer time must be positive");
    Geometry g;
    g.r1n = r1.norm();
    g.r2n = r2.norm();
    if (!(g.r1n > 0.0) || !(g.r2n > 0.0)) {
        throw GeometryError("lambert: terminal positions must be nonzero");
    }

    double theta = safe_acos(r1.dot(r2) / (g.r1n * g.r2n));
    if (branch == TransferPath::LongWay) theta = kTau - theta;
    if (theta < kAngleGuard || std::abs(theta - M_PI) < kAngleGuard ||
        theta > kTau - kAngleGuard) {
        throw GeometryError("lambert: transfer angle too close to 0 or pi, plane undefined");
    }
    g.theta = theta;
    g.a_coef = std::sin(theta) * std::sqrt(g.r1n * g.r2n / (1.0 - std::cos(theta)));

    std::vector<LambertArc> out;
    if (nrev == 0) {
        // tof(z) is monotone increasing on (-inf, 4*pi^2)
        double zlo = -4.0 * kTau;  // generous hyperbolic margin, extended below if needed
        while (tof_of(zlo, g, body.mu) > tof || tof_of(zlo, g, body.mu) < 0.0) {
            if (tof_of(zlo, g, body.mu) < 0.0) break;  // y<0 wall; bracket stays valid
            zlo *= 2.0;
            if (zlo < -1e6) throw InfeasibleError("lambert: no zero-rev solution");
        }
        const double zhi = kTau * kTau - 1e-10;
        const double z = solve_bracket(zlo, zhi, tof, g, body.mu, true);
        out.push_back(build_arc(z, g, r1, r2, tof, 0, branch, body));
        return out;
    }

    // multi-rev: tof is convex-like on ((2n*pi)^2, (2(n+1)*pi)^2) with a single
    // interior minimum and walls at both ends
    const double zl = std::pow(kTau * nrev, 2) + 1e-9;
    const double zr = std::pow(kTau * (nrev + 1), 2) - 1e-9;
    // golden-section search for the minimum
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = zl, b = zr;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = tof_of(x1, g, body.mu), f2 = tof_of(x2, g, body.mu);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = tof_of(x1, g, body.mu);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = tof_of(x2, g, body.mu);
        }
        if (b - a < 1e-10 * std::max(1.0, b)) break;
    }
    const double zmin = 0.5 * (a + b);
    const double tmin = tof_of(zmin, g, body.mu);
    if (tof < tmin) {
        throw InfeasibleError("lambert: transfer time below the minimum for requested revolutions");
    }

    LambertArc left = build_arc(solve_bracket(zl, zmin, tof, g, body.mu, false), g,
                                r1, r2, tof, nrev, branch, body);
    LambertArc right = build_arc(solve_bracket(zmin, zr, tof, g, body.mu, true), g,
                                 r1, r2, tof, nrev, branch, body);
    const double mu = body.mu;
    auto sma = [&](const LambertArc& arc) {
        return -mu / (2.0 * (0.5 * arc.v1.squaredNorm() - mu / g.r1n));
    };
    left.high_energy = sma(left) >= sma(right);
    right.high_energy = !left.high_energy;
    out.push_back(left);
    if (std::abs(tof - tmin) > 1e-9 * tof) out.push_back(right);
    return out;
}

}  // namespace isoimp
