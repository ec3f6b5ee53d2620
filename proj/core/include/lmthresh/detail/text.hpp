#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lmthresh::detail {

// Strips surrounding whitespace and a trailing '\r'.
std::string_view trim(std::string_view s) noexcept;

// Splits on any of ",;\t " collapsing runs of whitespace; empty fields
// between explicit delimiters are kept.
std::vector<std::string_view> split_fields(std::string_view line);

// Parses the whole token as a finite double.
std::optional<double> parse_double(std::string_view token) noexcept;

// True for blank lines and lines whose first non-blank character is '#'.
bool is_skippable(std::string_view line) noexcept;

}  // namespace lmthresh::detail
