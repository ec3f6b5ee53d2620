#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lmthresh::detail {

struct NelderMeadOptions {
    std::vector<double> step;       // initial simplex offsets, one per coordinate
    double f_tol = 1e-12;           // vertex value spread, scaled by 1 + |f|
    double x_tol = 1e-10;           // max vertex distance from the best vertex
    std::size_t max_iterations = 5000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

// Derivative-free minimization. The objective may return +inf for
// infeasible points; such vertices are always replaced first.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options);

}  // namespace lmthresh::detail
