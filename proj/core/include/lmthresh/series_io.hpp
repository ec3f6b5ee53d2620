#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmthresh {

/// A named univariate series as read from one input file.
struct Series {
    std::string id;
    std::vector<double> values;
};

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One value per line, taken from field `column` (0-based) when the line is
/// delimited. Blank lines and `#` comments are ignored and a non-numeric
/// first data line is treated as a header. Any later non-numeric token is a
/// SeriesError naming the line.
[[nodiscard]] Series read_series(std::istream& in, std::string id, std::size_t column = 0);

[[nodiscard]] Series read_series_file(const std::filesystem::path& path, std::size_t column = 0);

}  // namespace lmthresh
