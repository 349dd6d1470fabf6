#include "isoimp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace isoimp {

namespace {

double clipped(double x, double lo, double hi) {
    return std::min(hi, std::max(lo, x));
}

}  // namespace

OptimumPoint differential_evolution(const Objective& f,
                                    const std::vector<double>& lower,
                                    const std::vector<double>& upper,
                                    const DeSettings& settings,
                                    const std::vector<std::vector<double>>& seeds) {
    const int dim = static_cast<int>(lower.size());
    const int np = std::max(8, settings.population_multiplier * dim);
    std::mt19937_64 rng(settings.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
    std::vector<double> score(np);
    for (int i = 0; i < np; ++i) {
        if (i < static_cast<int>(seeds.size())) {
            for (int j = 0; j < dim; ++j) {
                pop[i][j] = clipped(seeds[i][j], lower[j], upper[j]);
            }
        } else {
            for (int j = 0; j < dim; ++j) {
                pop[i][j] = lower[j] + unit(rng) * (upper[j] - lower[j]);
            }
        }
        score[i] = f(pop[i]);
    }

    std::uniform_int_distribution<int> pick(0, np - 1);
    std::uniform_int_distribution<int> coord(0, dim - 1);
    std::vector<double> trial(dim);
    for (int gen = 0; gen < settings.generations; ++gen) {
        for (int i = 0; i < np; ++i) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            while (a == i) a = pick(rng);
            while (b == i || b == a) b = pick(rng);
            while (c == i || c == a || c == b) c = pick(rng);
            const int jrand = coord(rng);
            for (int j = 0; j < dim; ++j) {
                if (j == jrand || unit(rng) < settings.crossover) {
                    trial[j] = clipped(pop[a][j] + settings.weight * (pop[b][j] - pop[c][j]),
                                       lower[j], upper[j]);
                } else {
                    trial[j] = pop[i][j];
                }
            }
            const double s = f(trial);
            if (s <= score[i]) {
                pop[i] = trial;
                score[i] = s;
            }
        }
    }

    int best = 0;
    for (int i = 1; i < np; ++i) {
        if (score[i] < score[best]) best = i;
    }
    return {pop[best], score[best]};
}

OptimumPoint nelder_mead(const Objective& f, const std::vector<double>& x0,
                         const std::vector<double>& lower,
                         const std::vector<double>& upper,
                         const std::vector<double>& scale, double tol,
                         int max_iter) {
    const int n = static_cast<int>(x0.size());
    auto eval = [&](std::vector<double>& x) {
        for (int j = 0; j < n; ++j) x[j] = clipped(x[j], lower[j], upper[j]);
        return f(x);
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> val(n + 1);
    val[0] = eval(simplex[0]);
    for (int i = 0; i < n; ++i) {
        simplex[i + 1][i] = clipped(x0[i] + scale[i], lower[i], upper[i]);
        if (simplex[i + 1][i] == x0[i]) simplex[i + 1][i] = clipped(x0[i] - scale[i], lower[i], upper[i]);
        val[i + 1] = eval(simplex[i + 1]);
    }

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<int> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] < val[b]; });
        const int best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(val[worst] - val[best]) <= tol * (std::abs(val[best]) + tol)) break;

        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i <= n; ++i) {
                if (i != worst) s += simplex[i][j];
            }
            centroid[j] = s / n;
        }

        for (int j = 0; j < n; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - simplex[worst][j]);
        const double fr = eval(xr);
        if (fr < val[best]) {
            for (int j = 0; j < n; ++j) xe[j] = centroid[j] + gamma * (centroid[j] - simplex[worst][j]);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                val[worst] = fe;
            } else {
                simplex[worst] = xr;
                val[worst] = fr;
            }
        } else if (fr < val[second]) {
            simplex[worst] = xr;
            val[worst] = fr;
        } else {
            for (int j = 0; j < n; ++j) xc[j] = centroid[j] + rho * (simplex[worst][j] - centroid[j]);
            const double fc = eval(xc);
            if (fc < val[worst]) {
                simplex[worst] = xc;
                val[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[best][j] + sigma * (simplex[i][j] - simplex[best][j]);
                    }
                    val[i] = eval(simplex[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i) {
        if (val[i] < val[best]) best = i;
    }
    return {simplex[best], val[best]};
}

OptimumPoint minimize_global(const Objective& f, const std::vector<double>& lower,
                             const std::vector<double>& upper,
                             const DeSettings& settings,
                             const std::vector<std::vector<double>>& seeds) {
    OptimumPoint best = differential_evolution(f, lower, upper, settings, seeds);
    const int n = static_cast<int>(lower.size());
    // polish rounds with shrinking simplices pin down the minimizer, not just
    // the minimum value
    for (double frac : {1e-2, 1e-4, 1e-6}) {
        std::vector<double> scale(n);
        for (int j = 0; j < n; ++j) scale[j] = frac * (upper[j] - lower[j]);
        OptimumPoint polished = nelder_mead(f, best.x, lower, upper, scale, 1e-14, 4000);
        if (polished.value <= best.value) best = polished;
    }
    return best;
}

double minimize_scalar(const std::function<double(double)>& f, double a, double b,
                       double tol, int max_iter) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
        if (b - a <= tol * (std::abs(a) + std::abs(b) + tol)) break;
    }
    return 0.5 * (a + b);
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("find_root: endpoints do not bracket a root");
    for (int it = 0; it < max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0 || (b - a) <= tol * (std::abs(m) + tol)) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace isoimp
