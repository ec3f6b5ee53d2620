#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmthresh/alrsm.hpp"
#include "lmthresh/gpd.hpp"
#include "lmthresh/series_io.hpp"

namespace lmthresh {

/// Which candidate thresholds to evaluate.
struct CandidateSpec {
    GridScheme scheme = GridScheme::I10;
    std::vector<double> probs;  // used when scheme == custom

    /// Accepts "10", "20", "all" or a comma-separated list of levels in [0, 1).
    static CandidateSpec parse(std::string_view text);
};

enum class OutputFormat { table, csv, json };

[[nodiscard]] OutputFormat parse_output_format(std::string_view text);

struct AnalysisConfig {
    CandidateSpec candidates;
    std::vector<double> periods;          // return periods in years
    std::optional<double> obs_per_year;   // needed with periods
    std::vector<double> probs;            // alternative to periods
    OutputFormat format = OutputFormat::table;
    std::uint64_t seed = 0;
    std::size_t min_observations = 20;
    std::size_t threads = 0;              // 0: hardware concurrency

    /// Throws std::invalid_argument unless exactly one of {periods with
    /// obs_per_year, probs} is set and every value is in range. When neither
    /// is set, probs defaults to {0.01, 0.001}.
    void validate();

    /// Per-observation exceedance probabilities, p = 1 / (obs_per_year * period)
    /// when periods are given.
    [[nodiscard]] std::vector<double> exceedance_probs() const;
};

struct ReturnLevelEntry {
    std::optional<double> period;  // years, when requested by period
    double p = 0.0;
    double value = 0.0;
    bool interpolation = false;
};

struct AnalysisReport {
    std::string id;
    bool ok = false;
    std::string error;

    std::size_t n = 0;
    std::size_t candidates = 0;  // candidates in the grid
    GridScheme scheme = GridScheme::I10;
    double quantile_pct = 0.0;
    std::size_t index = 0;
    double u_star = 0.0;
    std::size_t n_star = 0;
    GpdParams params;
    FitMethod fit_method = FitMethod::ml;
    bool ml_failed = false;
    std::vector<ReturnLevelEntry> return_levels;
    std::vector<std::string> warnings;
    SelectionResult selection;
};

/// Threshold selection, ML fit and return levels for one series. Never
/// throws for bad data; problems end up in `error`. When the ML fit fails
/// the L-moment fit is reported instead and `ml_failed` is set.
[[nodiscard]] AnalysisReport analyze_series(const Series& series, const AnalysisConfig& config);

/// Reads and analyzes each file on a bounded pool of workers. Reports come
/// back in input order and one bad file never stops the others.
[[nodiscard]] std::vector<AnalysisReport> analyze_files(
    const std::vector<std::filesystem::path>& files, const AnalysisConfig& config,
    std::size_t column = 0);

void write_reports(std::ostream& out, const std::vector<AnalysisReport>& reports,
                   const AnalysisConfig& config);

}  // namespace lmthresh
