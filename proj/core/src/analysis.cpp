#include "lmthresh/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "lmthresh/detail/text.hpp"

namespace lmthresh {

CandidateSpec CandidateSpec::parse(std::string_view text) {
    text = detail::trim(text);
    CandidateSpec spec;
    if (text == "10") {
        spec.scheme = GridScheme::I10;
    } else if (text == "20") {
        spec.scheme = GridScheme::I20;
    } else if (text == "all") {
        spec.scheme = GridScheme::all_points;
    } else {
        spec.scheme = GridScheme::custom;
        for (auto field : detail::split_fields(text)) {
            const auto p = detail::parse_double(field);
            if (!p || !(*p >= 0.0 && *p < 1.0)) {
                throw std::invalid_argument("invalid candidate level '" + std::string(field) +
                                            "' (expected 10, 20, all or levels in [0, 1))");
            }
            if (!spec.probs.empty() && !(*p > spec.probs.back())) {
                throw std::invalid_argument("candidate levels must be strictly increasing");
            }
            spec.probs.push_back(*p);
        }
        if (spec.probs.empty()) throw std::invalid_argument("empty candidate list");
    }
    return spec;
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "table") return OutputFormat::table;
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

void AnalysisConfig::validate() {
    const bool by_period = !periods.empty() || obs_per_year.has_value();
    if (by_period && !probs.empty()) {
        throw std::invalid_argument("give either return periods with observations per year, or "
                                    "exceedance probabilities, not both");
    }
    if (by_period) {
        if (periods.empty()) throw std::invalid_argument("observations per year given without periods");
        if (!obs_per_year) throw std::invalid_argument("return periods need observations per year");
        if (!(*obs_per_year > 0.0)) throw std::invalid_argument("observations per year must be positive");
        for (double t : periods) {
            if (!(t > 0.0)) throw std::invalid_argument("return periods must be positive");
        }
    } else {
        if (probs.empty()) probs = {0.01, 0.001};
        for (double p : probs) {
            if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probabilities must lie in (0, 1)");
        }
    }
    for (double p : exceedance_probs()) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument("return period too short for the observation rate");
        }
    }
}

std::vector<double> AnalysisConfig::exceedance_probs() const {
    if (!periods.empty() && obs_per_year) {
        std::vector<double> out;
        out.reserve(periods.size());
        for (double t : periods) out.push_back(1.0 / (*obs_per_year * t));
        return out;
    }
    return probs;
}

AnalysisReport analyze_series(const Series& series, const AnalysisConfig& config) {
    AnalysisReport rep;
    rep.id = series.id;
    rep.n = series.values.size();
    rep.scheme = config.candidates.scheme;
    try {
        if (rep.n < config.min_observations) {
            throw std::invalid_argument("only " + std::to_string(rep.n) + " observations (need " +
                                        std::to_string(config.min_observations) + ")");
        }
        const SortedSample sample(series.values);
        const CandidateGrid grid =
            config.candidates.scheme == GridScheme::custom
                ? candidate_grid(sample, config.candidates.probs)
                : candidate_grid(sample, config.candidates.scheme);
        rep.candidates = grid.entries.size();
        rep.selection = select_threshold(sample, grid);
        const SelectionResult& sel = rep.selection;
        rep.warnings = sel.warnings;
        rep.index = sel.index;
        rep.u_star = sel.u_star;
        rep.n_star = sel.n_star;
        rep.quantile_pct = 100.0 * sel.prob;

        const SortedSample excesses = sample.excesses_over(sel.u_star);
        FitResult fit = fit_ml(excesses);
        if (!fit.converged) {
            rep.ml_failed = true;
            fit = fit_lmom(excesses);
            if (!fit.converged) throw std::runtime_error("GPd fit failed (ML and L-moment)");
            rep.warnings.push_back("ML fit failed; reporting the L-moment fit");
        } else if (fit.at_boundary) {
            rep.warnings.push_back("ML shape estimate at the search boundary");
        }
        rep.params = fit.params;
        rep.fit_method = fit.method;

        const auto probs = config.exceedance_probs();
        for (std::size_t k = 0; k < probs.size(); ++k) {
            const ReturnLevel rl = return_level(fit.params, {probs[k], rep.n, rep.n_star, rep.u_star});
            ReturnLevelEntry e;
            if (!config.periods.empty()) e.period = config.periods[k];
            e.p = probs[k];
            e.value = rl.value;
            e.interpolation = rl.interpolation;
            if (rl.interpolation) {
                rep.warnings.push_back("level for p=" + std::to_string(probs[k]) +
                                       " lies within the excess range (interpolation)");
            }
            rep.return_levels.push_back(e);
        }
        rep.ok = true;
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
    }
    return rep;
}

std::vector<AnalysisReport> analyze_files(const std::vector<std::filesystem::path>& files,
                                          const AnalysisConfig& config, std::size_t column) {
    std::vector<AnalysisReport> out(files.size());
    if (files.empty()) return out;
    auto one = [&](std::size_t i) {
        try {
            out[i] = analyze_series(read_series_file(files[i], column), config);
        } catch (const std::exception& e) {
            out[i] = AnalysisReport{};
            out[i].id = files[i].string();
            out[i].error = e.what();
        }
    };
    std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, files.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) one(i);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return out;
}

namespace {

std::string full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string level_label(const AnalysisConfig& config, std::size_t k) {
    if (!config.periods.empty()) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "RL_%g", config.periods[k]);
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "q_%g", config.probs[k]);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string_view method_name(FitMethod m) { return m == FitMethod::ml ? "ml" : "lmom"; }

void write_table(std::ostream& out, const std::vector<AnalysisReport>& reports,
                 const AnalysisConfig& config) {
    const std::size_t levels = config.exceedance_probs().size();
    std::size_t id_width = 4;
    for (const auto& r : reports) id_width = std::max(id_width, r.id.size());

    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s  %5s  %11s  %9s  %6s  %7s  %8s", static_cast<int>(id_width),
                  "file", "I", "quantile(%)", "u*", "n*", "xi_hat", "sigma");
    out << buf;
    for (std::size_t k = 0; k < levels; ++k) {
        std::snprintf(buf, sizeof buf, "  %10s", level_label(config, k).c_str());
        out << buf;
    }
    out << '\n';
    for (const auto& r : reports) {
        if (!r.ok) {
            std::snprintf(buf, sizeof buf, "%-*s  error: ", static_cast<int>(id_width), r.id.c_str());
            out << buf << r.error << '\n';
            continue;
        }
        std::snprintf(buf, sizeof buf, "%-*s  %5zu  %11s  %9s  %6zu  %7s  %8s",
                      static_cast<int>(id_width), r.id.c_str(), r.candidates,
                      fixed(r.quantile_pct, 1).c_str(), fixed(r.u_star, 3).c_str(), r.n_star,
                      fixed(r.params.xi, 3).c_str(), fixed(r.params.sigma, 3).c_str());
        out << buf;
        for (const auto& e : r.return_levels) {
            std::snprintf(buf, sizeof buf, "  %10s", fixed(e.value, 2).c_str());
            out << buf;
        }
        if (r.ml_failed) out << "  (L-moment fit)";
        out << '\n';
        for (const auto& w : r.warnings) out << "    warning: " << w << '\n';
    }
}

void write_csv(std::ostream& out, const std::vector<AnalysisReport>& reports,
               const AnalysisConfig& config) {
    const std::size_t levels = config.exceedance_probs().size();
    out << "file,status,n,candidates,index,quantile_pct,u_star,n_star,xi,sigma,fit_method";
    for (std::size_t k = 0; k < levels; ++k) out << ',' << level_label(config, k);
    out << ",message\n";
    for (const auto& r : reports) {
        out << csv_escape(r.id) << ',' << (r.ok ? "ok" : "error") << ',' << r.n << ',';
        if (r.ok) {
            out << r.candidates << ',' << r.index << ',' << full(r.quantile_pct) << ','
                << full(r.u_star) << ',' << r.n_star << ',' << full(r.params.xi) << ','
                << full(r.params.sigma) << ',' << method_name(r.fit_method);
            for (const auto& e : r.return_levels) out << ',' << full(e.value);
            out << ',' << csv_escape(join(r.warnings, "; ")) << '\n';
        } else {
            out << ",,,,,,,";
            for (std::size_t k = 0; k < levels; ++k) out << ',';
            out << ',' << csv_escape(r.error) << '\n';
        }
    }
}

void write_json(std::ostream& out, const std::vector<AnalysisReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["file"] = r.id;
        j["status"] = r.ok ? "ok" : "error";
        j["n"] = r.n;
        if (!r.ok) {
            j["error"] = r.error;
            arr.push_back(std::move(j));
            continue;
        }
        j["candidates"] = r.candidates;
        j["scheme"] = std::string(to_string(r.scheme));
        j["index"] = r.index;
        j["quantile_pct"] = r.quantile_pct;
        j["u_star"] = r.u_star;
        j["n_star"] = r.n_star;
        j["xi"] = r.params.xi;
        j["sigma"] = r.params.sigma;
        j["fit_method"] = std::string(method_name(r.fit_method));
        j["ml_failed"] = r.ml_failed;
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& e : r.return_levels) {
            nlohmann::json l;
            if (e.period) l["period"] = *e.period;
            l["p"] = e.p;
            l["value"] = e.value;
            l["interpolation"] = e.interpolation;
            levels.push_back(std::move(l));
        }
        j["return_levels"] = std::move(levels);
        j["warnings"] = r.warnings;
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace

void write_reports(std::ostream& out, const std::vector<AnalysisReport>& reports,
                   const AnalysisConfig& config) {
    switch (config.format) {
        case OutputFormat::table: write_table(out, reports, config); break;
        case OutputFormat::csv: write_csv(out, reports, config); break;
        case OutputFormat::json: write_json(out, reports); break;
    }
}

}  // namespace lmthresh
