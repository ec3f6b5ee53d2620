#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmthresh/lmoments.hpp"

namespace lmthresh {

/// Fewest excesses for which t3 and t4 are defined.
inline constexpr std::size_t kMinExcesses = 4;
/// Candidates with fewer excesses than this are kept but flagged.
inline constexpr std::size_t kFewExcesses = 10;
/// all_points grids leave out this many of the largest observations.
inline constexpr std::size_t kAllPointsTopExcluded = 10;

enum class GridScheme { I10, I20, all_points, custom };

[[nodiscard]] std::string_view to_string(GridScheme scheme) noexcept;

struct Candidate {
    double prob = 0.0;  // sample quantile level in [0, 1)
    double u = 0.0;     // threshold in data units
};

struct CandidateGrid {
    std::vector<Candidate> entries;
    GridScheme scheme = GridScheme::custom;
    std::vector<std::string> warnings;
};

/// Sample quantile by linear interpolation of order statistics at
/// h = (n - 1) p + 1 (Hyndman-Fan type 7).
[[nodiscard]] double empirical_quantile(const SortedSample& sample, double p);

/// Quantile levels of the fixed schemes: 25% upward in steps of 7.5% (I10)
/// or 3.7% (I20).
[[nodiscard]] std::vector<double> scheme_probabilities(GridScheme scheme);

/// Builds the candidate thresholds for a sample. Candidates at the top that
/// leave fewer than kMinExcesses strict excesses are dropped with a warning.
/// Throws std::invalid_argument when nothing is left.
[[nodiscard]] CandidateGrid candidate_grid(const SortedSample& sample, GridScheme scheme);

/// Custom grid from explicit quantile levels (strictly increasing, in [0, 1)).
[[nodiscard]] CandidateGrid candidate_grid(const SortedSample& sample,
                                           std::span<const double> probs);

struct CurveDistance {
    double distance = 0.0;
    double tau3_nearest = 0.0;
};

/// Minimum Euclidean distance from (t3, t4) to the GPd curve
/// {(tau3, g(tau3)) : -1 < tau3 < 1}.
[[nodiscard]] CurveDistance min_distance_to_curve(double t3, double t4);

struct CandidateDiagnostic {
    std::size_t index = 0;  // 1-based position in the grid
    double prob = 0.0;
    double u = 0.0;
    std::size_t n_excess = 0;
    double t3 = 0.0;
    double t4 = 0.0;
    double distance = 0.0;
    double tau3_nearest = 0.0;
};

struct SelectionResult {
    double u_star = 0.0;
    double prob = 0.0;
    std::size_t index = 0;  // 1-based
    std::size_t n_star = 0;
    std::vector<CandidateDiagnostic> diagnostics;
    std::vector<std::string> warnings;
};

/// Picks the candidate whose excess (t3, t4) lies closest to the GPd curve,
/// lowest threshold on ties. Candidates with too few or constant excesses
/// are skipped with a warning; throws std::runtime_error if all are skipped.
[[nodiscard]] SelectionResult select_threshold(const SortedSample& sample,
                                               const CandidateGrid& grid);

enum class LmrdKind { curve, bound, candidate, selected };

[[nodiscard]] std::string_view to_string(LmrdKind kind) noexcept;

struct LmrdRow {
    LmrdKind kind = LmrdKind::curve;
    double tau3 = 0.0;
    double tau4 = 0.0;
    std::size_t index = 0;
    double u = 0.0;
    std::size_t n_excess = 0;
    double distance = 0.0;
};

/// Plot data for the L-moment ratio diagram: the GPd curve and the general
/// lower bound sampled at tau3 = k / curve_points (k < curve_points), then
/// one row per evaluated candidate with the chosen one marked `selected`.
[[nodiscard]] std::vector<LmrdRow> lmrd_export(const SelectionResult& result,
                                               std::size_t curve_points);

/// Header `kind,tau3,tau4,index,u,n_excess,distance` followed by the rows.
void write_lmrd(std::ostream& out, std::span<const LmrdRow> rows, char delimiter = ',');

/// Standalone SVG drawing of the diagram.
void render_lmrd_svg(std::ostream& out, std::span<const LmrdRow> rows);

}  // namespace lmthresh
