#include "lmthresh/stopping_rules.hpp"

#include <cmath>
#include <istream>
#include <stdexcept>
#include <string>

#include "lmthresh/detail/text.hpp"

namespace lmthresh {

namespace {
constexpr double kUpperClamp = 1.0 - 1e-12;
}

ForwardStopResult forward_stop(const PValueSequence& seq, double alpha) {
    if (seq.pvalues.empty()) throw std::invalid_argument("forward_stop: empty p-value sequence");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("forward_stop: alpha must lie in (0, 1)");

    ForwardStopResult out;
    out.alpha = alpha;
    out.transformed.reserve(seq.pvalues.size());
    double running = 0.0;
    for (std::size_t k = 1; k <= seq.pvalues.size(); ++k) {
        const double p = seq.pvalues[k - 1];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("forward_stop: p-value " + std::to_string(k) +
                                        " outside [0, 1]");
        }
        running += -std::log1p(-std::min(p, kUpperClamp));
        const double t = running / static_cast<double>(k);
        out.transformed.push_back(t);
        if (t <= alpha) out.k_hat = k;
    }
    if (out.k_hat < seq.pvalues.size()) out.selected_index = out.k_hat + 1;
    return out;
}

PValueSequence read_pvalue_sequence(std::istream& in) {
    PValueSequence seq;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_skippable(line)) continue;
        const auto fields = detail::split_fields(line);
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (!seen_data) {
            bool any_numeric = false;
            for (auto f : fields) any_numeric = any_numeric || detail::parse_double(f).has_value();
            if (!any_numeric) continue;  // header row
        }
        if (fields.size() != 2) {
            throw std::runtime_error(where + "expected 2 columns (index, p-value), got " +
                                     std::to_string(fields.size()));
        }
        const auto index = detail::parse_double(fields[0]);
        const auto p = detail::parse_double(fields[1]);
        if (!index || !p) throw std::runtime_error(where + "non-numeric field");
        if (*index < 0 || *index != std::floor(*index)) {
            throw std::runtime_error(where + "index must be a non-negative integer");
        }
        if (!(*p >= 0.0 && *p <= 1.0)) throw std::runtime_error(where + "p-value outside [0, 1]");
        seq.labels.push_back(static_cast<std::size_t>(*index));
        seq.pvalues.push_back(*p);
        seen_data = true;
    }
    if (seq.pvalues.empty()) throw std::runtime_error("p-value file has no data rows");
    return seq;
}

}  // namespace lmthresh
