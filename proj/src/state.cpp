#include "isoimp/state.hpp"

#include <cmath>

#include "isoimp/errors.hpp"

namespace isoimp {

namespace {
constexpr double kTau = 2.0 * M_PI;
constexpr double kDegenerate = 1e-10;
}  // namespace

double wrap_angle(double x) {
    double w = std::fmod(x, kTau);
    if (w < 0.0) w += kTau;
    return w;
}

double safe_acos(double x) {
    if (x >= 1.0) return 0.0;
    if (x <= -1.0) return M_PI;
    return std::acos(x);
}

double specific_energy(const StateVector& s, const CentralBody& body) {
    return 0.5 * s.v.squaredNorm() - body.mu / s.r.norm();
}

double period_from_sma(double a, const CentralBody& body) {
    return kTau * std::sqrt(a * a * a / body.mu);
}

double sma_from_period(double period, const CentralBody& body) {
    const double n = kTau / period;
    return std::cbrt(body.mu / (n * n));
}

double period_from_state(const StateVector& s, const CentralBody& body) {
    const double eps = specific_energy(s, body);
    if (eps >= 0.0) {
        throw UnboundOrbitError("period_from_state: orbit is not bound (energy >= 0)");
    }
    const double a = -body.mu / (2.0 * eps);
    return period_from_sma(a, body);
}

StateVector elements_to_state(const OrbitElements& el, const CentralBody& body) {
    if (!(el.e >= 0.0) || el.e >= 1.0 || !(el.a > 0.0)) {
        throw UnboundOrbitError("elements_to_state: elements are not elliptic");
    }
    const double p = el.a * (1.0 - el.e * el.e);
    const double rmag = p / (1.0 + el.e * std::cos(el.ta));

    // perifocal state
    const Eigen::Vector3d r_pf(rmag * std::cos(el.ta), rmag * std::sin(el.ta), 0.0);
    const double vs = std::sqrt(body.mu / p);
    const Eigen::Vector3d v_pf(-vs * std::sin(el.ta), vs * (el.e + std::cos(el.ta)), 0.0);

    const Eigen::Matrix3d rot =
        (Eigen::AngleAxisd(el.raan, Eigen::Vector3d::UnitZ()) *
         Eigen::AngleAxisd(el.inc, Eigen::Vector3d::UnitX()) *
         Eigen::AngleAxisd(el.argp, Eigen::Vector3d::UnitZ()))
            .toRotationMatrix();

    return {rot * r_pf, rot * v_pf, 0.0};
}

OrbitElements state_to_elements(const StateVector& s, const CentralBody& body) {
    const double eps = specific_energy(s, body);
    if (eps >= 0.0) {
        throw UnboundOrbitError("state_to_elements: orbit is not bound (energy >= 0)");
    }
    const double rmag = s.r.norm();
    const Eigen::Vector3d h = s.r.cross(s.v);
    const Eigen::Vector3d evec =
        s.v.cross(h) / body.mu - s.r / rmag;

    OrbitElements el;
    el.a = -body.mu / (2.0 * eps);
    el.e = evec.norm();
    el.inc = safe_acos(h.z() / h.norm());

    // node direction; synthesize the reference axis for near-equatorial orbits
    Eigen::Vector3d node = Eigen::Vector3d::UnitZ().cross(h);
    const bool equatorial = el.inc < kDegenerate || node.norm() < 1e-14;
    if (equatorial) {
        node = Eigen::Vector3d::UnitX();
        el.raan = 0.0;
    } else {
        node.normalize();
        el.raan = wrap_angle(std::atan2(node.y(), node.x()));
    }

    const bool circular = el.e < kDegenerate;
    Eigen::Vector3d apse;
    if (circular) {
        apse = node;
        el.argp = 0.0;
    } else {
        apse = evec / el.e;
        double argp = safe_acos(std::min(1.0, std::max(-1.0, node.dot(apse))));
        if ((node.cross(apse)).dot(h) < 0.0) argp = kTau - argp;
        el.argp = wrap_angle(argp);
    }

    double ta = safe_acos(apse.dot(s.r) / rmag);
    if ((apse.cross(s.r)).dot(h) < 0.0) ta = kTau - ta;
    el.ta = wrap_angle(ta);
    return el;
}

namespace {

double true_to_mean(double ta, double e) {
    const double ea = 2.0 * std::atan2(std::sqrt(1.0 - e) * std::sin(ta / 2.0),
                                       std::sqrt(1.0 + e) * std::cos(ta / 2.0));
    return ea - e * std::sin(ea);
}

double mean_to_true(double ma, double e) {
    // Newton on Kepler's equation; always converges for e < 1
    double ea = ma;
    for (int i = 0; i < 50; ++i) {
        const double f = ea - e * std::sin(ea) - ma;
        const double d = 1.0 - e * std::cos(ea);
        const double step = f / d;
        ea -= step;
        if (std::abs(step) < 1e-14) break;
    }
    return 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(ea / 2.0),
                            std::sqrt(1.0 - e) * std::cos(ea / 2.0));
}

}  // namespace

double time_between_anomalies(const OrbitElements& orbit, double ta0, double ta1,
                              const CentralBody& body) {
    const double period = period_from_sma(orbit.a, body);
    const double m0 = true_to_mean(ta0, orbit.e);
    const double m1 = true_to_mean(ta1, orbit.e);
    double dm = std::fmod(m1 - m0, kTau);
    if (dm < 0.0) dm += kTau;
    return dm / kTau * period;
}

double anomaly_after_time(const OrbitElements& orbit, double ta0, double dt,
                          const CentralBody& body) {
    const double period = period_from_sma(orbit.a, body);
    const double m0 = true_to_mean(ta0, orbit.e);
    const double m1 = m0 + dt / period * kTau;
    return wrap_angle(mean_to_true(std::fmod(m1, kTau), orbit.e));
}

}  // namespace isoimp
