#pragma once

#include <cstdint>
#include <vector>

#include "lmthresh/rng.hpp"

namespace lmthresh {

/// Hybrid(u, xi): Uniform(0, 1) density on (0, u) joined to a GPd tail with
/// shape xi and scale 1 - u above u. The true threshold is u by construction.
struct HybridParams {
    double u = 0.75;
    double xi = 0.2;

    /// Throws std::invalid_argument unless 0 < u < 1 and -1 < xi < 1.
    void validate() const;

    [[nodiscard]] double sigma_u() const noexcept { return 1.0 - u; }

    /// ((1 + xi) u - 1) / xi for xi < 0, +inf for xi >= 0.
    [[nodiscard]] double upper_endpoint() const noexcept;
};

[[nodiscard]] double hybrid_pdf(double x, const HybridParams& params) noexcept;
[[nodiscard]] double hybrid_cdf(double x, const HybridParams& params) noexcept;

/// Inverse CDF. Throws std::domain_error for p outside [0, 1]; p = 1 gives the endpoint.
[[nodiscard]] double hybrid_quantile(double p, const HybridParams& params);

[[nodiscard]] std::vector<double> hybrid_sample(std::size_t count, const HybridParams& params,
                                                std::uint64_t seed);
[[nodiscard]] std::vector<double> hybrid_sample(std::size_t count, const HybridParams& params,
                                                CounterRng& rng);

}  // namespace lmthresh
