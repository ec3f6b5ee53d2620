#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lmthresh/lmoments.hpp"
#include "lmthresh/rng.hpp"

namespace lmthresh {

/// Below this |xi| the exponential-limit formulas are used.
inline constexpr double kXiZeroTol = 1e-6;

/// Zero-location Generalized Pareto parameters.
struct GpdParams {
    double xi = 0.0;
    double sigma = 1.0;

    /// Right endpoint of the support: -sigma/xi for xi < 0, +inf otherwise.
    [[nodiscard]] double upper_endpoint() const noexcept {
        return xi < 0.0 ? -sigma / xi : std::numeric_limits<double>::infinity();
    }
};

enum class FitMethod { ml, lmom };

struct FitResult {
    GpdParams params;
    double loglik = -std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t iterations = 0;
    FitMethod method = FitMethod::ml;
    // ML estimate pressed against the xi search box (-1, 1).
    bool at_boundary = false;
};

struct ReturnLevelQuery {
    double p = 0.01;        // exceedance probability per observation
    std::size_t n = 0;      // full sample size
    std::size_t n_star = 0; // excesses above u_star
    double u_star = 0.0;
};

struct ReturnLevel {
    double value = 0.0;
    // n p >= n*: the requested level lies inside the fitted excess range
    // rather than beyond it.
    bool interpolation = false;
};

[[nodiscard]] double gpd_pdf(double y, const GpdParams& params) noexcept;
[[nodiscard]] double gpd_logpdf(double y, const GpdParams& params) noexcept;
[[nodiscard]] double gpd_cdf(double y, const GpdParams& params) noexcept;

/// Inverse CDF for p in [0, 1). p = 1 returns the endpoint (+inf when xi >= 0).
/// Throws std::domain_error for p outside [0, 1].
[[nodiscard]] double gpd_quantile(double p, const GpdParams& params);

/// Inverse-CDF draws from the counter-based generator.
[[nodiscard]] std::vector<double> gpd_sample(std::size_t count, const GpdParams& params,
                                             std::uint64_t seed);
[[nodiscard]] std::vector<double> gpd_sample(std::size_t count, const GpdParams& params,
                                             CounterRng& rng);

/// Sum of log densities; -inf when any excess falls outside the support.
[[nodiscard]] double gpd_loglik(const SortedSample& excesses, const GpdParams& params) noexcept;

/// L-moment inversion: xi = 2 - l1/l2, sigma = l1 (1 - xi).
[[nodiscard]] FitResult fit_lmom(const SortedSample& excesses);

/// Maximum likelihood by Nelder-Mead over (xi, log sigma), xi restricted to (-1, 1).
/// The default start is the L-moment fit moved into the feasible region.
[[nodiscard]] FitResult fit_ml(const SortedSample& excesses,
                               std::optional<GpdParams> init = std::nullopt);

/// u* + (sigma/xi) ((n p / n*)^(-xi) - 1), with the log limit near xi = 0.
/// Throws std::domain_error on an invalid query.
[[nodiscard]] ReturnLevel return_level(const GpdParams& params, const ReturnLevelQuery& query);

}  // namespace lmthresh
