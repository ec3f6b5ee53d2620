#include "lmthresh/detail/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmthresh::detail {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t d = start.size();
    if (d == 0) throw std::invalid_argument("nelder_mead: empty start point");
    if (options.step.size() != d) throw std::invalid_argument("nelder_mead: step size mismatch");

    // Standard coefficients: reflection, expansion, contraction, shrink.
    constexpr double kAlpha = 1.0;
    constexpr double kGamma = 2.0;
    constexpr double kRho = 0.5;
    constexpr double kSigma = 0.5;

    auto eval = [&](const std::vector<double>& x) {
        const double f = objective(x);
        return std::isnan(f) ? HUGE_VAL : f;
    };

    std::vector<Vertex> simplex;
    simplex.reserve(d + 1);
    simplex.push_back({start, eval(start)});
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> x = start;
        x[j] += options.step[j];
        simplex.push_back({x, eval(x)});
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::vector<double> centroid(d);
    auto point_along = [&](double coef, const std::vector<double>& worst) {
        std::vector<double> p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = centroid[j] + coef * (centroid[j] - worst[j]);
        return p;
    };

    NelderMeadResult result;
    std::size_t iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        const Vertex& best = simplex.front();
        const Vertex& worst = simplex.back();

        if (std::isfinite(worst.f)) {
            const double spread = worst.f - best.f;
            double size = 0.0;
            for (std::size_t k = 1; k <= d; ++k) {
                for (std::size_t j = 0; j < d; ++j) {
                    size = std::max(size, std::abs(simplex[k].x[j] - best.x[j]));
                }
            }
            if (spread <= options.f_tol * (1.0 + std::abs(best.f)) &&
                size <= options.x_tol) {
                result.converged = true;
                break;
            }
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[k].x[j];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        const Vertex& second_worst = simplex[d - 1];
        auto reflected = point_along(kAlpha, worst.x);
        const double fr = eval(reflected);

        if (fr < best.f) {
            auto expanded = point_along(kGamma, worst.x);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex.back() = {std::move(expanded), fe};
            } else {
                simplex.back() = {std::move(reflected), fr};
            }
            continue;
        }
        if (fr < second_worst.f) {
            simplex.back() = {std::move(reflected), fr};
            continue;
        }
        // Contraction: outside if the reflection improved on the worst vertex.
        const bool outside = fr < worst.f;
        auto contracted = point_along(outside ? kRho : -kRho, worst.x);
        const double fc = eval(contracted);
        if (outside ? fc <= fr : fc < worst.f) {
            simplex.back() = {std::move(contracted), fc};
            continue;
        }
        for (std::size_t k = 1; k <= d; ++k) {
            for (std::size_t j = 0; j < d; ++j) {
                simplex[k].x[j] = best.x[j] + kSigma * (simplex[k].x[j] - best.x[j]);
            }
            simplex[k].f = eval(simplex[k].x);
        }
    }

    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    result.x = simplex.front().x;
    result.value = simplex.front().f;
    result.iterations = iter;
    return result;
}

}  // namespace lmthresh::detail
