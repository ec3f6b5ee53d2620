#include "lmthresh/detail/text.hpp"

#include <charconv>
#include <cmath>

namespace lmthresh::detail {

std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view kSpace = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(kSpace);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(kSpace);
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    line = trim(line);
    if (line.empty()) return fields;
    std::size_t start = 0;
    while (start <= line.size()) {
        const auto pos = line.find_first_of(",;\t ", start);
        const auto end = pos == std::string_view::npos ? line.size() : pos;
        fields.push_back(trim(line.substr(start, end - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
        // A whitespace run, possibly around an explicit delimiter, is one separator.
        bool saw_explicit = line[pos] == ',' || line[pos] == ';';
        while (start < line.size() && (line[start] == ' ' || line[start] == '\t' ||
                                       (!saw_explicit && (line[start] == ',' || line[start] == ';')))) {
            if (line[start] == ',' || line[start] == ';') saw_explicit = true;
            ++start;
        }
    }
    return fields;
}

std::optional<double> parse_double(std::string_view token) noexcept {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

bool is_skippable(std::string_view line) noexcept {
    line = trim(line);
    return line.empty() || line.front() == '#';
}

}  // namespace lmthresh::detail
