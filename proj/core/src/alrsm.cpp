#include "lmthresh/alrsm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lmthresh {

std::string_view to_string(GridScheme scheme) noexcept {
    switch (scheme) {
        case GridScheme::I10: return "10";
        case GridScheme::I20: return "20";
        case GridScheme::all_points: return "all";
        case GridScheme::custom: return "custom";
    }
    return "custom";
}

std::string_view to_string(LmrdKind kind) noexcept {
    switch (kind) {
        case LmrdKind::curve: return "curve";
        case LmrdKind::bound: return "bound";
        case LmrdKind::candidate: return "candidate";
        case LmrdKind::selected: return "selected";
    }
    return "curve";
}

double empirical_quantile(const SortedSample& sample, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("empirical_quantile: p outside [0, 1]");
    const std::size_t n = sample.size();
    // 1-based position evaluated in the same floating-point order as R's
    // quantile(type = 7), so thresholds agree bit for bit with that reference.
    const double index = 1.0 + static_cast<double>(n - 1) * p;
    const double lo = std::floor(index);
    const double hi = std::ceil(index);
    const double x_lo = sample[static_cast<std::size_t>(lo) - 1];
    const double x_hi = sample[std::min(static_cast<std::size_t>(hi), n) - 1];
    if (!(index > lo) || x_hi == x_lo) return x_lo;
    const double h = index - lo;
    return (1.0 - h) * x_lo + h * x_hi;
}

std::vector<double> scheme_probabilities(GridScheme scheme) {
    // Levels in per-mille integers to avoid accumulated stepping error.
    int start = 250;
    int step = 0;
    int count = 0;
    switch (scheme) {
        case GridScheme::I10: step = 75; count = 10; break;
        case GridScheme::I20: step = 37; count = 20; break;
        default: throw std::invalid_argument("scheme has no fixed probability levels");
    }
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) probs.push_back((start + step * k) / 1000.0);
    return probs;
}

namespace {

CandidateGrid finish_grid(const SortedSample& sample, CandidateGrid grid) {
    std::size_t keep = grid.entries.size();
    while (keep > 0 && sample.count_above(grid.entries[keep - 1].u) < kMinExcesses) --keep;
    if (keep < grid.entries.size()) {
        grid.warnings.push_back("dropped " + std::to_string(grid.entries.size() - keep) +
                                " top candidate(s) leaving fewer than " +
                                std::to_string(kMinExcesses) + " excesses");
        grid.entries.resize(keep);
    }
    if (grid.entries.empty()) {
        throw std::invalid_argument("no candidate threshold leaves at least " +
                                    std::to_string(kMinExcesses) + " excesses");
    }
    return grid;
}

}  // namespace

CandidateGrid candidate_grid(const SortedSample& sample, GridScheme scheme) {
    if (scheme == GridScheme::custom) {
        throw std::invalid_argument("custom grids need explicit probabilities");
    }
    CandidateGrid grid;
    grid.scheme = scheme;
    if (scheme == GridScheme::all_points) {
        const std::size_t n = sample.size();
        if (n <= kAllPointsTopExcluded) {
            throw std::invalid_argument("all-points grid needs more than " +
                                        std::to_string(kAllPointsTopExcluded) + " observations");
        }
        const std::size_t last = n - kAllPointsTopExcluded;
        for (std::size_t i = 0; i < last; ++i) {
            if (i > 0 && sample[i] == sample[i - 1]) continue;
            const double prob = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
            grid.entries.push_back({prob, sample[i]});
        }
        return finish_grid(sample, std::move(grid));
    }
    for (double p : scheme_probabilities(scheme)) {
        grid.entries.push_back({p, empirical_quantile(sample, p)});
    }
    return finish_grid(sample, std::move(grid));
}

CandidateGrid candidate_grid(const SortedSample& sample, std::span<const double> probs) {
    CandidateGrid grid;
    grid.scheme = GridScheme::custom;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("candidate level outside [0, 1)");
        if (i > 0 && !(p > probs[i - 1])) {
            throw std::invalid_argument("candidate levels must be strictly increasing");
        }
        grid.entries.push_back({p, empirical_quantile(sample, p)});
    }
    return finish_grid(sample, std::move(grid));
}

namespace {

double squared_gap(double t3, double t4, double tau3) {
    const double a = t3 - tau3;
    const double b = t4 - gpd_tau4_of_tau3(tau3);
    return a * a + b * b;
}

// Minimizer of a unimodal function on [lo, hi].
double golden_section(double t3, double t4, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = squared_gap(t3, t4, c);
    double fd = squared_gap(t3, t4, d);
    while (hi - lo > tol) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = squared_gap(t3, t4, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = squared_gap(t3, t4, d);
        }
    }
    return fc <= fd ? c : d;
}

}  // namespace

CurveDistance min_distance_to_curve(double t3, double t4) {
    constexpr int kCoarse = 512;
    constexpr double kTol = 1e-9;
    const double lo_open = std::nextafter(-1.0, 0.0);
    const double hi_open = std::nextafter(1.0, 0.0);

    std::array<double, kCoarse + 1> grid_f{};
    auto node = [](int j) { return -1.0 + 2.0 * j / kCoarse; };
    for (int j = 0; j <= kCoarse; ++j) {
        grid_f[j] = squared_gap(t3, t4, std::clamp(node(j), lo_open, hi_open));
    }

    double best_tau = 0.0;
    double best_f = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= kCoarse; ++j) {
        const bool left_ok = j == 0 || grid_f[j] <= grid_f[j - 1];
        const bool right_ok = j == kCoarse || grid_f[j] <= grid_f[j + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = std::max(node(std::max(j - 1, 0)), lo_open);
        const double hi = std::min(node(std::min(j + 1, kCoarse)), hi_open);
        const double tau = std::clamp(golden_section(t3, t4, lo, hi, kTol), lo_open, hi_open);
        const double f = squared_gap(t3, t4, tau);
        if (f < best_f) {
            best_f = f;
            best_tau = tau;
        }
    }
    return {std::sqrt(best_f), best_tau};
}

SelectionResult select_threshold(const SortedSample& sample, const CandidateGrid& grid) {
    if (grid.entries.empty()) throw std::invalid_argument("candidate grid is empty");
    SelectionResult result;
    result.warnings = grid.warnings;

    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.entries.size(); ++i) {
        const Candidate& c = grid.entries[i];
        const std::size_t count = sample.count_above(c.u);
        const std::string label = "candidate " + std::to_string(i + 1);
        if (count < kMinExcesses) {
            result.warnings.push_back(label + " skipped: " + std::to_string(count) + " excesses");
            continue;
        }
        const LMomentSet lm = sample_lmoments(sample.excesses_over(c.u));
        if (!lm.has_ratios()) {
            result.warnings.push_back(label + " skipped: constant excesses");
            continue;
        }
        if (count < kFewExcesses) {
            result.warnings.push_back(label + " has only " + std::to_string(count) + " excesses");
        }
        const CurveDistance cd = min_distance_to_curve(*lm.t3, *lm.t4);
        CandidateDiagnostic diag{i + 1, c.prob, c.u, count, *lm.t3, *lm.t4, cd.distance,
                                 cd.tau3_nearest};
        if (diag.distance < best_distance) {
            best_distance = diag.distance;
            best = result.diagnostics.size();
        }
        result.diagnostics.push_back(diag);
    }
    if (result.diagnostics.empty()) {
        throw std::runtime_error("threshold selection failed: every candidate was skipped");
    }
    const CandidateDiagnostic& chosen = result.diagnostics[best];
    result.u_star = chosen.u;
    result.prob = chosen.prob;
    result.index = chosen.index;
    result.n_star = chosen.n_excess;
    return result;
}

std::vector<LmrdRow> lmrd_export(const SelectionResult& result, std::size_t curve_points) {
    std::vector<LmrdRow> rows;
    rows.reserve(2 * curve_points + result.diagnostics.size());
    for (std::size_t k = 0; k < curve_points; ++k) {
        const double tau3 = static_cast<double>(k) / static_cast<double>(curve_points);
        rows.push_back({LmrdKind::curve, tau3, gpd_tau4_of_tau3(tau3), 0, 0.0, 0, 0.0});
    }
    for (std::size_t k = 0; k < curve_points; ++k) {
        const double tau3 = static_cast<double>(k) / static_cast<double>(curve_points);
        rows.push_back({LmrdKind::bound, tau3, general_lower_bound(tau3), 0, 0.0, 0, 0.0});
    }
    for (const CandidateDiagnostic& d : result.diagnostics) {
        const LmrdKind kind = d.index == result.index ? LmrdKind::selected : LmrdKind::candidate;
        rows.push_back({kind, d.t3, d.t4, d.index, d.u, d.n_excess, d.distance});
    }
    return rows;
}

}  // namespace lmthresh
