#include "isoimp/circle_classifier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isoimp/optimizer.hpp"

namespace isoimp {

namespace {

// impulse magnitude joining speeds u and w separated by angle `turn`
double turn_dv(double u, double w, double turn) {
    return std::sqrt(std::max(0.0, u * u + w * w - 2.0 * u * w * std::cos(turn)));
}

void check_inputs(double beta, double inc) {
    if (!(beta > 0.0) || beta > 1.0 + 1e-12) {
        throw std::invalid_argument("circle transfer: beta must lie in (0, 1]");
    }
    if (inc < 0.0 || inc > 0.5 * M_PI + 1e-12) {
        throw std::invalid_argument("circle transfer: inclination must lie in [0, pi/2]");
    }
}

// total impulse of the apoapsis-raising bi-elliptic construction with apex at
// x*r0 and plane-change fractions s1 (departure) and s2 (apex); the remainder
// happens at arrival. Speeds are in units of the initial circular speed.
double biell_dv(double ratio, double x, double s1, double s2, double inc) {
    const double v_dep = std::sqrt(2.0 * x / (1.0 + x));
    const double v_apex_in = std::sqrt(2.0 / (x * (1.0 + x)));
    const double v_apex_out = std::sqrt(2.0 * ratio / (x * (x + ratio)));
    const double v_arr = std::sqrt(2.0 * x / (ratio * (x + ratio)));
    const double v_circ_f = 1.0 / std::sqrt(ratio);
    const double s3 = 1.0 - s1 - s2;
    return turn_dv(1.0, v_dep, s1 * inc) + turn_dv(v_apex_in, v_apex_out, s2 * inc) +
           turn_dv(v_arr, v_circ_f, s3 * inc);
}

}  // namespace

double circle_dv_three_impulse_at_apex(double beta, double inc, double apex_ratio,
                                       double split_first, double split_second) {
    check_inputs(beta, inc);
    return biell_dv(1.0 / beta, apex_ratio, split_first, split_second, inc);
}

CircleDv circle_dv_two_impulse(double beta, double inc) {
    check_inputs(beta, inc);
    const double ratio = 1.0 / beta;  // rf / r0
    const double v_dep = std::sqrt(2.0 * ratio / (1.0 + ratio));
    const double v_arr = v_dep / ratio;
    const double v_circ_f = 1.0 / std::sqrt(ratio);
    auto cost = [&](double s) {
        return turn_dv(1.0, v_dep, s * inc) + turn_dv(v_arr, v_circ_f, (1.0 - s) * inc);
    };
    const double s = minimize_scalar(cost, 0.0, 1.0, 1e-12);
    return {cost(s), s, 0.0, 0.0};
}

CircleDv circle_dv_three_impulse(double beta, double inc, double apex_cap) {
    check_inputs(beta, inc);
    const double ratio = 1.0 / beta;

    auto best_splits = [&](double x, bool thorough) {
        Objective f = [&](const std::vector<double>& s) {
            if (s[0] + s[1] > 1.0) return 1e3 + s[0] + s[1];
            return biell_dv(ratio, x, s[0], s[1], inc);
        };
        static const std::vector<std::vector<double>> coarse = {{0.02, 0.9}, {0.25, 0.45}};
        static const std::vector<std::vector<double>> fine = {
            {0.02, 0.9}, {0.25, 0.45}, {0.02, 0.55}, {0.1, 0.8}, {0.0, 0.98}};
        OptimumPoint best{{0.0, 0.0}, 1e18};
        for (const auto& start : thorough ? fine : coarse) {
            const OptimumPoint p = nelder_mead(f, start, {0.0, 0.0}, {1.0, 1.0},
                                               {0.05, 0.05}, thorough ? 1e-14 : 1e-11,
                                               thorough ? 2000 : 600);
            if (p.value < best.value) best = p;
        }
        return best;
    };

    // the cost is not unimodal in the apex for mid-range radius ratios, so
    // scan a log grid first and refine around the best cell
    const double lx_lo = std::log(std::max(1.0, ratio));
    const double lx_hi = std::log(apex_cap * std::max(1.0, ratio));
    const int cells = 120;
    int best_cell = 0;
    double best_val = 1e18;
    for (int i = 0; i <= cells; ++i) {
        const double lx = lx_lo + (lx_hi - lx_lo) * i / cells;
        const double v = best_splits(std::exp(lx), false).value;
        if (v < best_val) {
            best_val = v;
            best_cell = i;
        }
    }
    const double step = (lx_hi - lx_lo) / cells;
    const double ref_lo = lx_lo + std::max(0, best_cell - 2) * step;
    const double ref_hi = lx_lo + std::min(cells, best_cell + 2) * step;
    auto cost_logx = [&](double lx) { return best_splits(std::exp(lx), false).value; };
    const double lx = minimize_scalar(cost_logx, ref_lo, ref_hi, 1e-12);
    const double x = std::exp(lx);
    const OptimumPoint s = best_splits(x, true);
    return {s.value, s.x[0], s.x[1], x};
}

CircleDv circle_dv_biparabolic(double beta) {
    check_inputs(beta, 0.0);
    // escape from r0, free plane turn at infinity, fall back onto the final circle
    const double dv = (std::sqrt(2.0) - 1.0) * (1.0 + std::sqrt(beta));
    return {dv, 0.0, 1.0, std::numeric_limits<double>::infinity()};
}

CircleTransferKind classify_circle_transfer(double beta, double inc, double tie_tol) {
    check_inputs(beta, inc);
    const CircleDv two = circle_dv_two_impulse(beta, inc);
    if (two.dv <= tie_tol) return CircleTransferKind::Boundary;  // identical orbits

    const double apex_cap = 1e5;
    const double x_floor = std::max(1.0, 1.0 / beta);
    const CircleDv three = circle_dv_three_impulse(beta, inc, apex_cap);
    const CircleDv bp = circle_dv_biparabolic(beta);

    // an apex pressed against the cap means the infimum is the bi-parabolic
    // limit; an apex collapsed onto the outer circle degenerates into the
    // two-impulse transfer
    const bool apex_ran_out = three.apex_ratio > 0.5 * apex_cap * x_floor;
    const bool apex_degenerate = three.apex_ratio < x_floor * (1.0 + 1e-6);

    const double dv3 = (apex_ran_out || apex_degenerate)
                           ? std::numeric_limits<double>::infinity()
                           : three.dv;
    const double best = std::min({two.dv, dv3, bp.dv});
    const bool two_at = two.dv <= best + tie_tol;
    const bool three_at = dv3 <= best + tie_tol;
    const bool bp_at = bp.dv <= best + tie_tol;
    if (int(two_at) + int(three_at) + int(bp_at) > 1) return CircleTransferKind::Boundary;
    if (two_at) return CircleTransferKind::TwoImpulse;
    if (three_at) return CircleTransferKind::ThreeImpulse;
    return CircleTransferKind::BiParabolic;
}

const char* to_string(CircleTransferKind k) {
    switch (k) {
        case CircleTransferKind::TwoImpulse: return "two-impulse";
        case CircleTransferKind::ThreeImpulse: return "three-impulse";
        case CircleTransferKind::BiParabolic: return "bi-parabolic";
        default: return "boundary";
    }
}

}  // namespace isoimp
