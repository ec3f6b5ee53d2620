#include "lmthresh/lmoments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lmthresh {

SortedSample::SortedSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("sample is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("sample value " + std::to_string(i) + " is not finite");
        }
    }
    std::sort(values_.begin(), values_.end());
}

SortedSample SortedSample::from_sorted(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("sample is empty");
    return SortedSample(std::move(values), Trusted{});
}

std::size_t SortedSample::count_above(double u) const noexcept {
    auto it = std::upper_bound(values_.begin(), values_.end(), u);
    return static_cast<std::size_t>(values_.end() - it);
}

SortedSample SortedSample::excesses_over(double u) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), u);
    if (it == values_.end()) throw std::domain_error("no values above threshold");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(values_.end() - it));
    for (; it != values_.end(); ++it) out.push_back(*it - u);
    return SortedSample(std::move(out), Trusted{});
}

std::pair<double, double> LMomentSet::ratios() const {
    if (order < 4) throw std::domain_error("L-moment ratios need at least 4 observations");
    if (!has_ratios()) throw std::domain_error("L-moment ratios undefined for a degenerate sample");
    return {*t3, *t4};
}

namespace {

// a_0 .. a_{R-1} in a single pass. The order-statistic weight
// C(n-i, r) / C(n-1, r) is advanced with the ratio (n-i-r)/(n-i), which
// stays in [0, 1] and never forms a binomial coefficient.
// `shift` is subtracted from every value first.
template <std::size_t R>
std::array<double, R> pwm_prefix(std::span<const double> x, std::size_t count, double shift) {
    const std::size_t n = x.size();
    std::array<double, R> sums{};
    std::array<double, R> weight{};
    weight.fill(1.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double xi = x[i - 1] - shift;
        const double m = static_cast<double>(n - i);
        for (std::size_t r = 0; r < count; ++r) {
            sums[r] += weight[r] * xi;
            weight[r] = m > 0.0 ? weight[r] * (m - static_cast<double>(r)) / m : 0.0;
        }
    }
    for (std::size_t r = 0; r < count; ++r) sums[r] /= static_cast<double>(n);
    return sums;
}

}  // namespace

double pwm_unbiased(const SortedSample& sample, std::size_t r) {
    const std::size_t n = sample.size();
    if (r >= n) {
        throw std::domain_error("PWM order " + std::to_string(r) + " needs more than " +
                                std::to_string(n) + " observations");
    }
    if (r == 0) {
        double s = 0.0;
        for (double v : sample.values()) s += v;
        return s / static_cast<double>(n);
    }
    double weight = 1.0;
    double sum = 0.0;
    const double rr = static_cast<double>(r);
    for (std::size_t i = 1; i <= n - r; ++i) {
        sum += weight * sample[i - 1];
        const double m = static_cast<double>(n - i);
        weight *= (m - rr) / m;
    }
    return sum / static_cast<double>(n);
}

LMomentSet sample_lmoments(const SortedSample& sample) {
    const std::size_t n = sample.size();
    const std::size_t order = std::min<std::size_t>(n, 4);
    // l2..l4 do not depend on location, and centering first keeps the
    // differences a0 - 2 a1 etc. from cancelling when the location is large
    // compared with the spread.
    double mean = 0.0;
    for (double v : sample.values()) mean += v;
    mean /= static_cast<double>(n);
    const auto a = pwm_prefix<4>(sample.values(), order, mean);

    LMomentSet out;
    out.order = order;
    out.l1 = mean + a[0];
    if (order >= 2) out.l2 = a[0] - 2.0 * a[1];
    if (order >= 3) out.l3 = a[0] - 6.0 * a[1] + 6.0 * a[2];
    if (order >= 4) out.l4 = a[0] - 12.0 * a[1] + 30.0 * a[2] - 20.0 * a[3];

    // l2 is half the mean absolute pairwise difference, so it is >= 0 up to
    // rounding and exactly representable as zero only for constant samples.
    const double scale = std::max(std::abs(sample.min()), std::abs(sample.max()));
    const bool degenerate = sample.min() == sample.max() || !(out.l2 > 1e-14 * scale);
    if (order == 4 && !degenerate) {
        out.t3 = out.l3 / out.l2;
        out.t4 = out.l4 / out.l2;
        out.outside_general_bounds =
            *out.t4 < general_lower_bound(*out.t3) || *out.t4 >= 1.0;
    }
    return out;
}

GpdLMoments gpd_theoretical_lmoments(double xi, double sigma) {
    if (!(xi < 1.0)) throw std::domain_error("GPd L-moments require xi < 1");
    if (!(sigma > 0.0)) throw std::domain_error("GPd scale must be positive");
    return {sigma / (1.0 - xi), sigma / ((1.0 - xi) * (2.0 - xi)), (1.0 + xi) / (3.0 - xi)};
}

}  // namespace lmthresh
