#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace lmthresh {

/// Raw p-values of ordered hypotheses, one per candidate threshold in
/// increasing order. `labels` optionally carries the candidate indices.
struct PValueSequence {
    std::vector<double> pvalues;
    std::vector<std::size_t> labels;
};

struct ForwardStopResult {
    std::vector<double> transformed;  // transformed[k-1] = -(1/k) sum_{i<=k} log(1 - p_i)
    std::size_t k_hat = 0;            // hypotheses 1..k_hat are rejected
    double alpha = 0.05;
    std::optional<std::size_t> selected_index;  // k_hat + 1, absent when k_hat == I

    [[nodiscard]] bool no_acceptable_threshold() const noexcept { return !selected_index; }
};

/// ForwardStop cutoff k_hat = max{k : -(1/k) sum log(1 - p_i) <= alpha}.
/// p = 0 contributes exactly zero; p values near 1 are clamped to
/// 1 - 1e-12 before the log. Throws std::invalid_argument for an empty
/// sequence, p outside [0, 1], or alpha outside (0, 1).
[[nodiscard]] ForwardStopResult forward_stop(const PValueSequence& seq, double alpha);

/// Reads `index,p` rows (comma, semicolon, tab or space separated; '#'
/// comments and an optional header allowed). Throws std::runtime_error
/// naming the offending line.
[[nodiscard]] PValueSequence read_pvalue_sequence(std::istream& in);

}  // namespace lmthresh
