#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tsforge::optim {

struct NelderMeadOptions {
    int max_iterations = 2000;
    /// Converged when the objective spread across the simplex drops below
    /// tolerance * max(1, |f_best|).
    double tolerance = 1e-10;
    /// Initial simplex edge per coordinate (absolute when the start is zero).
    double initial_step = 0.1;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Derivative-free simplex minimization (reflection, expansion, contraction,
/// shrink). The objective may return +inf or very large values to mark
/// infeasible points; the start point must be finite.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, const NelderMeadOptions& options = {});

}  // namespace tsforge::optim
