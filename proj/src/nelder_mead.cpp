#include "tsforge/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsforge/errors.hpp"

namespace tsforge::optim {

namespace {
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> start, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) {
        // Nothing to optimize; evaluate once and return.
        NelderMeadResult r;
        r.value = objective(start);
        r.converged = true;
        return r;
    }

    std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) {
        // Steps scale with the coordinate so large intercepts still move.
        const double step = std::max(options.initial_step, 0.05 * std::abs(simplex[i + 1][i]));
        simplex[i + 1][i] += step;
    }

    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = objective(simplex[i]);
    if (!std::isfinite(values[0])) {
        throw NumericError("simplex start point has non-finite objective");
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    };

    std::vector<double> centroid(n), reflected(n), candidate(n);
    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        sort_simplex();
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        // Spread is measured relative to the objective scale; an absolute
        // threshold would sit below double precision for large objectives.
        const double spread = values[worst] - values[best];
        if (std::isfinite(spread) &&
            spread < options.tolerance * std::max(1.0, std::abs(values[best]))) {
            converged = true;
            break;
        }

        // Centroid of all points except the worst.
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t j = 0; j < n; ++j) {
            reflected[j] = centroid[j] + kReflect * (centroid[j] - simplex[worst][j]);
        }
        const double f_reflected = objective(reflected);

        if (f_reflected < values[best]) {
            for (std::size_t j = 0; j < n; ++j) {
                candidate[j] = centroid[j] + kExpand * (reflected[j] - centroid[j]);
            }
            const double f_expanded = objective(candidate);
            if (f_expanded < f_reflected) {
                simplex[worst] = candidate;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
            continue;
        }

        // Contract toward the centroid, outside or inside of the worst point.
        const bool outside = f_reflected < values[worst];
        const auto& toward = outside ? reflected : simplex[worst];
        for (std::size_t j = 0; j < n; ++j) {
            candidate[j] = centroid[j] + kContract * (toward[j] - centroid[j]);
        }
        const double f_contracted = objective(candidate);
        if (f_contracted < std::min(values[worst], f_reflected)) {
            simplex[worst] = candidate;
            values[worst] = f_contracted;
            continue;
        }

        // Shrink everything toward the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best][j] + kShrink * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = objective(simplex[i]);
        }
    }

    sort_simplex();
    NelderMeadResult result;
    result.x = simplex[order[0]];
    result.value = values[order[0]];
    result.converged = converged;
    result.iterations = iter;
    return result;
}

}  // namespace tsforge::optim
