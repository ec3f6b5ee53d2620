#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmthresh/alrsm.hpp"

namespace lmthresh {

/// One cell of the Monte Carlo design: Hybrid(u_true, xi) samples of size n,
/// thresholds chosen on a fixed candidate scheme.
struct Scenario {
    double xi = 0.2;
    double u_true = 0.75;
    std::size_t n = 500;
    GridScheme scheme = GridScheme::I20;
    std::size_t reps = 1500;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct SimulationOptions {
    /// Exceedance probabilities for the two tail quantiles.
    std::array<double, 2> exceedance{0.01, 0.001};
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 0;
};

enum class FailureStage { none, selection, fit };

[[nodiscard]] std::string_view to_string(FailureStage stage) noexcept;

struct ReplicationRecord {
    std::size_t rep_index = 0;
    FailureStage failure = FailureStage::none;
    std::string message;
    double u_star = 0.0;
    std::size_t n_star = 0;
    double xi_hat = 0.0;
    double sigma_hat = 0.0;
    std::array<double, 2> quantile{};  // estimates at options.exceedance

    [[nodiscard]] bool ok() const noexcept { return failure == FailureStage::none; }
};

struct ScenarioSummary {
    Scenario scenario;
    std::size_t successes = 0;
    std::size_t failures = 0;
    double mean_bias_u = 0.0;
    double rmse_u = 0.0;
    double mean_bias_xi = 0.0;
    double rmse_xi = 0.0;
    double mean_ratio_q99 = 0.0;
    double mean_ratio_q999 = 0.0;
    double rmse_q99 = 0.0;
    double rmse_q999 = 0.0;
    double runtime_seconds = 0.0;
    std::array<double, 2> true_quantile{};
};

/// Sample -> candidate grid -> selection -> ML fit -> tail quantiles. The
/// random stream is fixed by (scenario.seed, rep_index). Failures are
/// returned as records, never thrown.
[[nodiscard]] ReplicationRecord run_replication(const Scenario& scenario, std::size_t rep_index,
                                                const SimulationOptions& options = {});

/// Runs all replications (in parallel) and aggregates them in rep order.
/// Metrics cover successful replications only. Throws std::runtime_error
/// when every replication fails.
[[nodiscard]] ScenarioSummary run_scenario(const Scenario& scenario,
                                           const SimulationOptions& options = {});

/// Aggregation step of run_scenario, exposed for testing.
[[nodiscard]] ScenarioSummary summarize(const Scenario& scenario,
                                        const std::vector<ReplicationRecord>& records,
                                        const SimulationOptions& options = {});

/// The 36-cell design: xi in {-0.2, 0.2, 0.5}, u in {0.75, 0.5},
/// n in {1000, 500, 200}, 10 or 20 candidates.
[[nodiscard]] std::vector<Scenario> design_grid(std::size_t reps, std::uint64_t seed);

/// Reads one scenario per line: `xi u n scheme reps seed` separated by
/// commas or whitespace, scheme being 10 or 20; `#` comments and a header
/// row are allowed. Errors name the line.
[[nodiscard]] std::vector<Scenario> parse_scenarios(std::istream& in);

/// Delimited report with a header row. Runtime is wall-clock and is left
/// out unless requested so that reports are reproducible byte for byte.
void write_report(std::ostream& out, const std::vector<ScenarioSummary>& rows,
                  bool include_runtime = false);

/// Runs every scenario in order, writing the report to `out`.
std::vector<ScenarioSummary> run_study(const std::vector<Scenario>& scenarios, std::ostream& out,
                                       const SimulationOptions& options = {},
                                       bool include_runtime = false);

}  // namespace lmthresh
