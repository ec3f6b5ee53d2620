#include "lmthresh/simstudy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "lmthresh/detail/text.hpp"
#include "lmthresh/gpd.hpp"
#include "lmthresh/hybrid.hpp"

namespace lmthresh {

void Scenario::validate() const {
    HybridParams{u_true, xi}.validate();
    if (n < 1) throw std::invalid_argument("scenario sample size must be positive");
    if (reps < 1) throw std::invalid_argument("scenario needs at least one replication");
    if (scheme != GridScheme::I10 && scheme != GridScheme::I20) {
        throw std::invalid_argument("scenario scheme must be 10 or 20 candidates");
    }
}

std::string_view to_string(FailureStage stage) noexcept {
    switch (stage) {
        case FailureStage::none: return "none";
        case FailureStage::selection: return "selection";
        case FailureStage::fit: return "fit";
    }
    return "none";
}

ReplicationRecord run_replication(const Scenario& scenario, std::size_t rep_index,
                                  const SimulationOptions& options) {
    ReplicationRecord rec;
    rec.rep_index = rep_index;

    CounterRng rng(scenario.seed, rep_index);
    const SortedSample sample(hybrid_sample(scenario.n, {scenario.u_true, scenario.xi}, rng));

    SelectionResult sel;
    try {
        sel = select_threshold(sample, candidate_grid(sample, scenario.scheme));
    } catch (const std::exception& e) {
        rec.failure = FailureStage::selection;
        rec.message = e.what();
        return rec;
    }
    rec.u_star = sel.u_star;
    rec.n_star = sel.n_star;

    const FitResult fit = fit_ml(sample.excesses_over(sel.u_star));
    if (!fit.converged) {
        rec.failure = FailureStage::fit;
        rec.message = "ML fit did not converge";
        return rec;
    }
    rec.xi_hat = fit.params.xi;
    rec.sigma_hat = fit.params.sigma;
    for (std::size_t k = 0; k < rec.quantile.size(); ++k) {
        rec.quantile[k] =
            return_level(fit.params, {options.exceedance[k], scenario.n, sel.n_star, sel.u_star})
                .value;
    }
    if (!std::isfinite(rec.quantile[0]) || !std::isfinite(rec.quantile[1])) {
        rec.failure = FailureStage::fit;
        rec.message = "non-finite quantile estimate";
    }
    return rec;
}

ScenarioSummary summarize(const Scenario& scenario, const std::vector<ReplicationRecord>& records,
                          const SimulationOptions& options) {
    ScenarioSummary s;
    s.scenario = scenario;
    const HybridParams truth{scenario.u_true, scenario.xi};
    for (std::size_t k = 0; k < 2; ++k) {
        s.true_quantile[k] = hybrid_quantile(1.0 - options.exceedance[k], truth);
    }

    double bias_u = 0, sq_u = 0, bias_xi = 0, sq_xi = 0;
    double ratio[2] = {0, 0}, sq_q[2] = {0, 0};
    for (const ReplicationRecord& r : records) {
        if (!r.ok()) {
            ++s.failures;
            continue;
        }
        ++s.successes;
        const double du = r.u_star - scenario.u_true;
        const double dxi = r.xi_hat - scenario.xi;
        bias_u += du;
        sq_u += du * du;
        bias_xi += dxi;
        sq_xi += dxi * dxi;
        for (std::size_t k = 0; k < 2; ++k) {
            const double dq = r.quantile[k] - s.true_quantile[k];
            ratio[k] += r.quantile[k] / s.true_quantile[k];
            sq_q[k] += dq * dq;
        }
    }
    if (s.successes == 0) return s;
    const double m = static_cast<double>(s.successes);
    s.mean_bias_u = bias_u / m;
    s.rmse_u = std::sqrt(sq_u / m);
    s.mean_bias_xi = bias_xi / m;
    s.rmse_xi = std::sqrt(sq_xi / m);
    s.mean_ratio_q99 = ratio[0] / m;
    s.mean_ratio_q999 = ratio[1] / m;
    s.rmse_q99 = std::sqrt(sq_q[0] / m);
    s.rmse_q999 = std::sqrt(sq_q[1] / m);
    return s;
}

ScenarioSummary run_scenario(const Scenario& scenario, const SimulationOptions& options) {
    scenario.validate();
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<ReplicationRecord> records(scenario.reps);
    std::size_t workers = options.threads ? options.threads : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, scenario.reps);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < scenario.reps; i = next++) {
            records[i] = run_replication(scenario, i, options);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    ScenarioSummary s = summarize(scenario, records, options);
    s.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s.successes == 0) throw std::runtime_error("every replication of the scenario failed");
    return s;
}

std::vector<Scenario> design_grid(std::size_t reps, std::uint64_t seed) {
    std::vector<Scenario> out;
    for (double xi : {-0.2, 0.2, 0.5}) {
        for (double u : {0.75, 0.5}) {
            for (std::size_t n : {1000u, 500u, 200u}) {
                for (GridScheme scheme : {GridScheme::I10, GridScheme::I20}) {
                    out.push_back({xi, u, n, scheme, reps, seed});
                }
            }
        }
    }
    return out;
}

std::vector<Scenario> parse_scenarios(std::istream& in) {
    std::vector<Scenario> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_skippable(line)) continue;
        const auto fields = detail::split_fields(line);
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (out.empty() && !detail::parse_double(fields.front())) continue;  // header
        if (fields.size() != 6) {
            throw std::runtime_error(where + "expected 6 fields (xi u n scheme reps seed), got " +
                                     std::to_string(fields.size()));
        }
        double v[6];
        for (std::size_t i = 0; i < 6; ++i) {
            const auto parsed = detail::parse_double(fields[i]);
            if (!parsed) {
                throw std::runtime_error(where + "field " + std::to_string(i + 1) +
                                         " is not numeric: '" + std::string(fields[i]) + "'");
            }
            v[i] = *parsed;
        }
        for (std::size_t i : {2u, 3u, 4u, 5u}) {
            if (v[i] < 0 || v[i] != std::floor(v[i])) {
                throw std::runtime_error(where + "field " + std::to_string(i + 1) +
                                         " must be a non-negative integer");
            }
        }
        Scenario sc;
        sc.xi = v[0];
        sc.u_true = v[1];
        sc.n = static_cast<std::size_t>(v[2]);
        if (v[3] == 10) {
            sc.scheme = GridScheme::I10;
        } else if (v[3] == 20) {
            sc.scheme = GridScheme::I20;
        } else {
            throw std::runtime_error(where + "scheme must be 10 or 20");
        }
        sc.reps = static_cast<std::size_t>(v[4]);
        sc.seed = static_cast<std::uint64_t>(v[5]);
        try {
            sc.validate();
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + e.what());
        }
        out.push_back(sc);
    }
    if (out.empty()) throw std::runtime_error("scenario file contains no scenarios");
    return out;
}

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_report(std::ostream& out, const std::vector<ScenarioSummary>& rows,
                  bool include_runtime) {
    out << "xi,u,n,candidates,reps,seed,successes,failures,mean_bias_u,rmse_u,mean_bias_xi,"
           "rmse_xi,mean_ratio_q99,mean_ratio_q999,rmse_q99,rmse_q999";
    if (include_runtime) out << ",runtime_seconds";
    out << '\n';
    for (const ScenarioSummary& s : rows) {
        const Scenario& c = s.scenario;
        out << fmt_num(c.xi) << ',' << fmt_num(c.u_true) << ',' << c.n << ','
            << to_string(c.scheme) << ',' << c.reps << ',' << c.seed << ',' << s.successes << ','
            << s.failures << ',' << fmt_num(s.mean_bias_u) << ',' << fmt_num(s.rmse_u) << ','
            << fmt_num(s.mean_bias_xi) << ',' << fmt_num(s.rmse_xi) << ','
            << fmt_num(s.mean_ratio_q99) << ',' << fmt_num(s.mean_ratio_q999) << ','
            << fmt_num(s.rmse_q99) << ',' << fmt_num(s.rmse_q999);
        if (include_runtime) out << ',' << fmt_num(s.runtime_seconds);
        out << '\n';
    }
}

std::vector<ScenarioSummary> run_study(const std::vector<Scenario>& scenarios, std::ostream& out,
                                       const SimulationOptions& options, bool include_runtime) {
    if (scenarios.empty()) throw std::invalid_argument("run_study: no scenarios");
    std::vector<ScenarioSummary> rows;
    rows.reserve(scenarios.size());
    for (const Scenario& sc : scenarios) rows.push_back(run_scenario(sc, options));
    write_report(out, rows, include_runtime);
    out.flush();
    if (!out) throw std::runtime_error("failed to write simulation report");
    return rows;
}

}  // namespace lmthresh
