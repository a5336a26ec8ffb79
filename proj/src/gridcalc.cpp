#include "hsl/grid.hpp"

namespace hsl {

ConvergenceOrder convergence_order(const std::vector<std::pair<double, double>>& levels,
                                   double exact_tol) {
    if (levels.size() < 2) throw GridError("convergence_order: need at least 2 grid levels");
    bool all_exact = true;
    for (const auto& [h, r] : levels)
        if (r > exact_tol) all_exact = false;
    if (all_exact) return {0.0, true};

    // least-squares slope of log r vs log h
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(levels.size());
    for (const auto& [h, r] : levels) {
        const double lx = std::log(h), ly = std::log(std::max(r, 1e-300));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, false};
}

}  // namespace hsl
