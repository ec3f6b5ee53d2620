// lmthresh: automatic peaks-over-threshold analysis from the command line.
//
//   lmthresh select FILE... [--candidates 10|20|all|q1,q2,...]
//                           [--obs-per-year R --periods Y1,Y2,... | --probs p1,p2,...]
//                           [--format table|csv|json] [--out PATH]
//   lmthresh lmrd FILE [--candidates ...] [--curve-points N] [--out PATH] [--svg PATH]
//   lmthresh simulate [CONFIG | --design-grid] [--reps N] [--seed N] [--out PATH]
//   lmthresh forwardstop PVALUE_FILE [--alpha A]
//
// Exit codes: 0 success, 1 every input failed, 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lmthresh/alrsm.hpp"
#include "lmthresh/analysis.hpp"
#include "lmthresh/simstudy.hpp"
#include "lmthresh/stopping_rules.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAllFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct SelectArgs {
    std::vector<std::string> files;
    std::string candidates = "10";
    double obs_per_year = 0.0;
    std::vector<double> periods;
    std::vector<double> probs;
    std::string format = "table";
    std::uint64_t seed = 0;
    std::string out;
    std::size_t column = 1;
    std::size_t threads = 0;
    std::size_t min_obs = 20;
};

lmthresh::AnalysisConfig make_config(const SelectArgs& a) {
    lmthresh::AnalysisConfig cfg;
    try {
        cfg.candidates = lmthresh::CandidateSpec::parse(a.candidates);
        cfg.periods = a.periods;
        if (a.obs_per_year != 0.0) cfg.obs_per_year = a.obs_per_year;
        cfg.probs = a.probs;
        cfg.format = lmthresh::parse_output_format(a.format);
        cfg.seed = a.seed;
        cfg.threads = a.threads;
        cfg.min_observations = a.min_obs;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

void add_analysis_options(CLI::App* cmd, SelectArgs& a) {
    cmd->add_option("--candidates", a.candidates,
                    "Candidate thresholds: 10 or 20 sample quantiles from 25%, 'all' sample "
                    "points but the 10 largest, or explicit levels q1,q2,...")
        ->capture_default_str();
    cmd->add_option("--obs-per-year", a.obs_per_year,
                    "Average observations per year; return period T years maps to exceedance "
                    "probability p = 1/(obs_per_year * T)");
    cmd->add_option("--periods", a.periods, "Return periods in years")->delimiter(',');
    cmd->add_option("--probs", a.probs, "Exceedance probabilities (default 0.01,0.001)")
        ->delimiter(',');
    cmd->add_option("--seed", a.seed, "Seed recorded with the run (selection is deterministic)");
    cmd->add_option("--column", a.column, "1-based column to read from delimited files")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-obs", a.min_obs, "Minimum observations per file")->capture_default_str();
    cmd->add_option("--out", a.out, "Output path (default stdout)");
}

int run_select(const SelectArgs& a) {
    const auto cfg = make_config(a);
    const std::vector<std::filesystem::path> paths(a.files.begin(), a.files.end());
    const auto reports = lmthresh::analyze_files(paths, cfg, a.column - 1);
    Output out(a.out);
    lmthresh::write_reports(out.stream(), reports, cfg);
    std::size_t ok = 0;
    for (const auto& r : reports) {
        if (r.ok) {
            ++ok;
        } else {
            std::cerr << "lmthresh: " << r.id << ": " << r.error << '\n';
        }
    }
    return ok > 0 ? kExitOk : kExitAllFailed;
}

int run_lmrd(const SelectArgs& a, std::size_t curve_points, const std::string& svg) {
    auto cfg = make_config(a);
    lmthresh::AnalysisReport rep;
    try {
        rep = lmthresh::analyze_series(lmthresh::read_series_file(a.files.front(), a.column - 1), cfg);
    } catch (const std::exception& e) {
        rep.error = e.what();
    }
    if (!rep.ok) {
        std::cerr << "lmthresh: " << a.files.front() << ": " << rep.error << '\n';
        return kExitAllFailed;
    }
    const auto rows = lmthresh::lmrd_export(rep.selection, curve_points);
    Output out(a.out);
    lmthresh::write_lmrd(out.stream(), rows);
    if (!svg.empty()) {
        std::ofstream s(svg, std::ios::binary);
        if (!s) throw UsageError("cannot open " + svg);
        lmthresh::render_lmrd_svg(s, rows);
    }
    std::cerr << "selected candidate " << rep.index << " (" << rep.quantile_pct
              << "% level), u* = " << rep.u_star << ", n* = " << rep.n_star << '\n';
    return kExitOk;
}

int run_simulate(const std::string& config, bool design, std::size_t reps, std::uint64_t seed,
                 std::size_t threads, bool timings, const std::string& out_path) {
    std::vector<lmthresh::Scenario> scenarios;
    if (design == !config.empty()) throw UsageError("give either a scenario file or --design-grid");
    if (design) {
        scenarios = lmthresh::design_grid(reps, seed);
    } else {
        std::ifstream in(config);
        if (!in) throw UsageError("cannot open scenario file " + config);
        try {
            scenarios = lmthresh::parse_scenarios(in);
        } catch (const std::runtime_error& e) {
            throw UsageError(config + ": " + e.what());
        }
    }
    lmthresh::SimulationOptions options;
    options.threads = threads;

    std::vector<lmthresh::ScenarioSummary> rows;
    for (const auto& sc : scenarios) {
        try {
            rows.push_back(lmthresh::run_scenario(sc, options));
        } catch (const std::exception& e) {
            std::cerr << "lmthresh: scenario xi=" << sc.xi << " u=" << sc.u_true << " n=" << sc.n
                      << ": " << e.what() << '\n';
            return kExitAllFailed;
        }
        const auto& s = rows.back();
        std::fprintf(stderr, "xi=%g u=%g n=%zu I=%s reps=%zu: %.3f s, %zu failures\n", sc.xi,
                     sc.u_true, sc.n, std::string(lmthresh::to_string(sc.scheme)).c_str(), sc.reps,
                     s.runtime_seconds, s.failures);
    }
    Output out(out_path);
    lmthresh::write_report(out.stream(), rows, timings);
    return kExitOk;
}

int run_forwardstop(const std::string& path, double alpha, const std::string& out_path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    lmthresh::PValueSequence seq;
    try {
        seq = lmthresh::read_pvalue_sequence(in);
    } catch (const std::runtime_error& e) {
        throw UsageError(path + ": " + e.what());
    }
    lmthresh::ForwardStopResult r;
    try {
        r = lmthresh::forward_stop(seq, alpha);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Output out(out_path);
    auto& os = out.stream();
    os << "k,index,p,forwardstop,rejected\n";
    char buf[128];
    for (std::size_t k = 0; k < r.transformed.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f,%.6f,%s\n", k + 1, seq.labels[k],
                      seq.pvalues[k], r.transformed[k], k < r.k_hat ? "yes" : "no");
        os << buf;
    }
    os << "# alpha=" << alpha << " k_hat=" << r.k_hat;
    if (r.selected_index) {
        os << " selected_index=" << *r.selected_index
           << " selected_label=" << seq.labels[*r.selected_index - 1] << '\n';
    } else {
        os << " selected_index=none (every hypothesis rejected: no acceptable threshold)\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automatic threshold selection for peaks-over-threshold analysis"};
    app.require_subcommand(1);
    app.fallthrough();
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    SelectArgs sel;
    auto* select_cmd = app.add_subcommand("select", "Select thresholds and estimate return levels");
    select_cmd->add_option("files", sel.files, "Input series, one value per line")->required();
    add_analysis_options(select_cmd, sel);
    select_cmd->add_option("--format", sel.format, "table, csv or json")
        ->capture_default_str()
        ->check(CLI::IsMember({"table", "csv", "json"}));

    SelectArgs lm;
    std::size_t curve_points = 101;
    std::string svg;
    auto* lmrd_cmd = app.add_subcommand("lmrd", "Export L-moment ratio diagram data");
    lmrd_cmd->add_option("file", lm.files, "Input series")->required()->expected(1);
    add_analysis_options(lmrd_cmd, lm);
    lmrd_cmd->add_option("--curve-points", curve_points, "Points on the GPd curve")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    lmrd_cmd->add_option("--svg", svg, "Also write an SVG rendering");

    std::string sim_config, sim_out;
    bool design = false, timings = false;
    std::size_t reps = 1500;
    std::uint64_t seed = 20200101;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the Monte Carlo study");
    sim_cmd->add_option("config", sim_config, "Scenario file: xi u n scheme reps seed per line");
    sim_cmd->add_flag("--design-grid", design, "Use the 36-scenario design");
    sim_cmd->add_option("--reps", reps, "Replications per scenario with --design-grid")
        ->capture_default_str();
    sim_cmd->add_option("--seed", seed, "Seed with --design-grid")->capture_default_str();
    sim_cmd->add_flag("--timings", timings, "Add a runtime column to the report");
    sim_cmd->add_option("--out", sim_out, "Report path (default stdout)");

    std::string pv_file, pv_out;
    double alpha = 0.05;
    auto* fs_cmd = app.add_subcommand("forwardstop", "ForwardStop cutoff for ordered p-values");
    fs_cmd->add_option("pvalues", pv_file, "Two-column file: index, p-value")->required();
    fs_cmd->add_option("--alpha", alpha, "Significance level")->capture_default_str();
    fs_cmd->add_option("--out", pv_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        sel.threads = threads;
        lm.threads = threads;
        if (*select_cmd) return run_select(sel);
        if (*lmrd_cmd) return run_lmrd(lm, curve_points, svg);
        if (*sim_cmd) return run_simulate(sim_config, design, reps, seed, threads, timings, sim_out);
        if (*fs_cmd) return run_forwardstop(pv_file, alpha, pv_out);
    } catch (const UsageError& e) {
        std::cerr << "lmthresh: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "lmthresh: " << e.what() << '\n';
        return kExitAllFailed;
    }
    return kExitUsage;
}
