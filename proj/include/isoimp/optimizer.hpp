#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace isoimp {

using Objective = std::function<double(const std::vector<double>&)>;

struct DeSettings {
    int population_multiplier = 15;  // population = multiplier * dimension
    int generations = 600;
    double weight = 0.7;
    double crossover = 0.9;
    std::uint64_t seed = 0;
};

struct OptimumPoint {
    std::vector<double> x;
    double value;
};

/// Differential evolution (rand/1/bin) over a box. Deterministic for a fixed
/// seed. Extra starting points can be injected into the initial population.
OptimumPoint differential_evolution(const Objective& f,
                                    const std::vector<double>& lower,
                                    const std::vector<double>& upper,
                                    const DeSettings& settings,
                                    const std::vector<std::vector<double>>& seeds = {});

/// Nelder-Mead simplex descent from x0, clipped to the box. `scale` sets the
/// initial simplex edge per coordinate.
OptimumPoint nelder_mead(const Objective& f, const std::vector<double>& x0,
                         const std::vector<double>& lower,
                         const std::vector<double>& upper,
                         const std::vector<double>& scale, double tol,
                         int max_iter);

/// DE followed by repeated Nelder-Mead polish rounds with shrinking simplices.
OptimumPoint minimize_global(const Objective& f, const std::vector<double>& lower,
                             const std::vector<double>& upper,
                             const DeSettings& settings,
                             const std::vector<std::vector<double>>& seeds = {});

/// Brent-style scalar minimization on [a, b].
double minimize_scalar(const std::function<double(double)>& f, double a, double b,
                       double tol = 1e-10, int max_iter = 200);

/// Bisection root solve of f on [a, b]; f(a) and f(b) must differ in sign.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_iter = 200);

}  // namespace isoimp
