#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace lmthresh {

/// Ascending, finite sample. The constructor sorts once; every operation
/// taking a SortedSample relies on the ordering.
class SortedSample {
public:
    /// Throws std::invalid_argument on empty input or NaN/infinite values.
    explicit SortedSample(std::vector<double> values);

    /// Wraps data the caller guarantees to be sorted and finite.
    static SortedSample from_sorted(std::vector<double> values);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] double min() const noexcept { return values_.front(); }
    [[nodiscard]] double max() const noexcept { return values_.back(); }

    /// Strict excesses {x - u : x > u}, already sorted.
    [[nodiscard]] SortedSample excesses_over(double u) const;

    /// Number of values strictly greater than u.
    [[nodiscard]] std::size_t count_above(double u) const noexcept;

private:
    struct Trusted {};
    SortedSample(std::vector<double> values, Trusted) : values_(std::move(values)) {}

    std::vector<double> values_;
};

/// First four sample L-moments and the two shape ratios.
///
/// `order` is the number of L-moments that could be estimated (min(n, 4)).
/// Unavailable L-moments are left at zero. The ratios are present only when
/// order == 4 and l2 > 0.
struct LMomentSet {
    double l1 = 0.0;
    double l2 = 0.0;
    double l3 = 0.0;
    double l4 = 0.0;
    std::optional<double> t3;
    std::optional<double> t4;
    std::size_t order = 0;
    // (t3, t4) lies outside (5 t3^2 - 1)/4 <= t4 < 1. Sample ratios may do so.
    bool outside_general_bounds = false;

    [[nodiscard]] bool has_ratios() const noexcept { return t3.has_value() && t4.has_value(); }

    /// Returns {t3, t4}; throws std::domain_error when they are undefined.
    [[nodiscard]] std::pair<double, double> ratios() const;
};

/// Unbiased estimator a_r of the PWM alpha_r = E[X (1 - F(X))^r].
/// Throws std::domain_error when r >= n.
[[nodiscard]] double pwm_unbiased(const SortedSample& sample, std::size_t r);

[[nodiscard]] LMomentSet sample_lmoments(const SortedSample& sample);

struct GpdLMoments {
    double lambda1;
    double lambda2;
    double tau3;
};

/// Closed-form L-location, L-scale and L-skewness of a zero-location GPd.
/// Throws std::domain_error for xi >= 1 or sigma <= 0.
[[nodiscard]] GpdLMoments gpd_theoretical_lmoments(double xi, double sigma);

/// L-kurtosis as a function of L-skewness along the GPd family.
[[nodiscard]] constexpr double gpd_tau4_of_tau3(double tau3) noexcept {
    return tau3 * (1.0 + 5.0 * tau3) / (5.0 + tau3);
}

/// Lower bound on tau4 valid for any distribution with a finite mean.
[[nodiscard]] constexpr double general_lower_bound(double tau3) noexcept {
    return (5.0 * tau3 * tau3 - 1.0) / 4.0;
}

}  // namespace lmthresh
