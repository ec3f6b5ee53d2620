#include "lmthresh/hybrid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lmthresh/gpd.hpp"

namespace lmthresh {

void HybridParams::validate() const {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("Hybrid threshold u must lie in (0, 1)");
    if (!(xi > -1.0 && xi < 1.0)) throw std::invalid_argument("Hybrid shape xi must lie in (-1, 1)");
}

double HybridParams::upper_endpoint() const noexcept {
    // Same value as ((1 + xi) u - 1) / xi, written as u plus the GPd endpoint
    // so that e.g. (0.75, -0.2) gives exactly 2.
    if (xi < 0.0) return u - sigma_u() / xi;
    return std::numeric_limits<double>::infinity();
}

namespace {

GpdParams tail_of(const HybridParams& h) { return {h.xi, h.sigma_u()}; }

}  // namespace

double hybrid_pdf(double x, const HybridParams& params) noexcept {
    if (!(x > 0.0)) return 0.0;
    if (x < params.u) return 1.0;
    if (x >= params.upper_endpoint()) return 0.0;
    // GPd tail density times the tail mass (1 - u) equals 1 at the junction.
    return gpd_pdf(x - params.u, tail_of(params)) * params.sigma_u();
}

double hybrid_cdf(double x, const HybridParams& params) noexcept {
    if (!(x > 0.0)) return 0.0;
    if (x <= params.u) return x;
    return params.u + params.sigma_u() * gpd_cdf(x - params.u, tail_of(params));
}

double hybrid_quantile(double p, const HybridParams& params) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("hybrid_quantile: p outside [0, 1]");
    if (p <= params.u) return p;
    if (p == 1.0) return params.upper_endpoint();
    // Conditional tail probability given X > u.
    const double q = (p - params.u) / params.sigma_u();
    return params.u + gpd_quantile(q, tail_of(params));
}

std::vector<double> hybrid_sample(std::size_t count, const HybridParams& params, CounterRng& rng) {
    std::vector<double> out(count);
    for (double& v : out) v = hybrid_quantile(rng.next_uniform(), params);
    return out;
}

std::vector<double> hybrid_sample(std::size_t count, const HybridParams& params,
                                  std::uint64_t seed) {
    CounterRng rng(seed);
    return hybrid_sample(count, params, rng);
}

}  // namespace lmthresh
