#include "lmthresh/gpd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmthresh/detail/nelder_mead.hpp"

namespace lmthresh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Search box for the shape parameter in fit_ml.
constexpr double kXiLower = -1.0;
constexpr double kXiUpper = 1.0;
// Start points are kept this far inside the box.
constexpr double kStartMargin = 0.05;
constexpr double kBoundaryFlag = 1e-3;

bool near_zero(double xi) { return std::abs(xi) < kXiZeroTol; }

}  // namespace

double gpd_logpdf(double y, const GpdParams& params) noexcept {
    const auto [xi, sigma] = params;
    if (!(sigma > 0.0) || y < 0.0) return -kInf;
    if (near_zero(xi)) return -std::log(sigma) - y / sigma;
    const double z = xi * y / sigma;
    if (!(z > -1.0)) return -kInf;
    return -std::log(sigma) - (1.0 / xi + 1.0) * std::log1p(z);
}

double gpd_pdf(double y, const GpdParams& params) noexcept {
    return std::exp(gpd_logpdf(y, params));
}

double gpd_cdf(double y, const GpdParams& params) noexcept {
    const auto [xi, sigma] = params;
    if (!(y > 0.0)) return 0.0;
    if (near_zero(xi)) return -std::expm1(-y / sigma);
    const double z = xi * y / sigma;
    if (z <= -1.0) return 1.0;
    return -std::expm1(-std::log1p(z) / xi);
}

double gpd_quantile(double p, const GpdParams& params) {
    const auto [xi, sigma] = params;
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("gpd_quantile: p outside [0, 1]");
    if (p == 1.0) return params.upper_endpoint();
    if (near_zero(xi)) return -sigma * std::log1p(-p);
    return sigma / xi * std::expm1(-xi * std::log1p(-p));
}

std::vector<double> gpd_sample(std::size_t count, const GpdParams& params, CounterRng& rng) {
    std::vector<double> out(count);
    for (double& v : out) v = gpd_quantile(rng.next_uniform(), params);
    return out;
}

std::vector<double> gpd_sample(std::size_t count, const GpdParams& params, std::uint64_t seed) {
    CounterRng rng(seed);
    return gpd_sample(count, params, rng);
}

double gpd_loglik(const SortedSample& excesses, const GpdParams& params) noexcept {
    const auto [xi, sigma] = params;
    if (!(sigma > 0.0) || excesses.min() < 0.0) return -kInf;
    const double n = static_cast<double>(excesses.size());
    if (near_zero(xi)) {
        double s = 0.0;
        for (double y : excesses.values()) s += y;
        return -n * std::log(sigma) - s / sigma;
    }
    // For xi < 0 the largest excess is the binding support constraint.
    if (xi < 0.0 && !(1.0 + xi * excesses.max() / sigma > 0.0)) return -kInf;
    double s = 0.0;
    for (double y : excesses.values()) s += std::log1p(xi * y / sigma);
    return -n * std::log(sigma) - (1.0 / xi + 1.0) * s;
}

FitResult fit_lmom(const SortedSample& excesses) {
    FitResult out;
    out.method = FitMethod::lmom;
    out.converged = false;
    if (excesses.size() < 2) return out;
    const LMomentSet lm = sample_lmoments(excesses);
    if (!(lm.l2 > 0.0) || excesses.min() == excesses.max()) return out;

    const double xi = 2.0 - lm.l1 / lm.l2;
    const double sigma = lm.l1 * (1.0 - xi);
    out.params = {xi, sigma};
    out.converged = sigma > 0.0 && xi < 1.0;
    out.loglik = gpd_loglik(excesses, out.params);
    return out;
}

FitResult fit_ml(const SortedSample& excesses, std::optional<GpdParams> init) {
    FitResult out;
    out.method = FitMethod::ml;
    if (excesses.size() < 2 || excesses.min() == excesses.max() || excesses.min() < 0.0) {
        return out;
    }

    GpdParams start;
    if (init) {
        start = *init;
    } else {
        const FitResult lm = fit_lmom(excesses);
        start = lm.params;
        if (!std::isfinite(start.xi) || !std::isfinite(start.sigma) || !(start.sigma > 0.0)) {
            start = {0.0, sample_lmoments(excesses).l1};
        }
    }
    start.xi = std::clamp(start.xi, kXiLower + kStartMargin, kXiUpper - kStartMargin);
    if (!(start.sigma > 0.0)) start.sigma = sample_lmoments(excesses).l1;
    if (!(start.sigma > 0.0)) return out;
    // Move the start inside the support when a light tail puts the largest
    // excess past the endpoint.
    if (start.xi < 0.0 && !(1.0 + start.xi * excesses.max() / start.sigma > 0.0)) {
        start.sigma = -start.xi * excesses.max() * 1.05;
    }

    auto objective = [&](std::span<const double> theta) {
        const double xi = theta[0];
        if (!(xi > kXiLower && xi < kXiUpper)) return kInf;
        const double ll = gpd_loglik(excesses, {xi, std::exp(theta[1])});
        return std::isfinite(ll) ? -ll : kInf;
    };

    detail::NelderMeadOptions options;
    options.step = {0.1, 0.1};
    options.f_tol = 1e-13;
    options.x_tol = 1e-9;
    options.max_iterations = 4000;

    std::vector<double> theta{start.xi, std::log(start.sigma)};
    detail::NelderMeadResult best = detail::nelder_mead(objective, theta, options);
    std::size_t iterations = best.iterations;
    // Restart from the optimum with a fresh simplex until it stops improving;
    // guards against collapse of the simplex along a ridge.
    for (int restart = 0; restart < 6 && best.converged; ++restart) {
        options.step = {0.02, 0.02};
        auto again = detail::nelder_mead(objective, best.x, options);
        iterations += again.iterations;
        const bool improved = again.value < best.value - 1e-10 * (1.0 + std::abs(best.value));
        if (again.value <= best.value) best = std::move(again);
        if (!improved) break;
    }

    out.params = {best.x[0], std::exp(best.x[1])};
    out.loglik = std::isfinite(best.value) ? -best.value : -kInf;
    out.iterations = iterations;
    out.converged = best.converged && std::isfinite(out.loglik) && out.params.sigma > 0.0;
    out.at_boundary = out.params.xi < kXiLower + kBoundaryFlag ||
                      out.params.xi > kXiUpper - kBoundaryFlag;
    return out;
}

ReturnLevel return_level(const GpdParams& params, const ReturnLevelQuery& q) {
    if (!(q.p > 0.0 && q.p < 1.0)) throw std::domain_error("return_level: p must lie in (0, 1)");
    if (q.n_star < 1 || q.n_star > q.n) {
        throw std::domain_error("return_level: need 1 <= n_star <= n");
    }
    if (!(params.sigma > 0.0)) throw std::domain_error("return_level: sigma must be positive");

    const double ratio = static_cast<double>(q.n) * q.p / static_cast<double>(q.n_star);
    ReturnLevel rl;
    rl.interpolation = ratio >= 1.0;
    const double log_ratio = std::log(ratio);
    if (near_zero(params.xi)) {
        rl.value = q.u_star - params.sigma * log_ratio;
    } else {
        rl.value = q.u_star + params.sigma / params.xi * std::expm1(-params.xi * log_ratio);
    }
    return rl;
}

}  // namespace lmthresh
