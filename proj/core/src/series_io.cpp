#include "lmthresh/series_io.hpp"

#include <fstream>
#include <istream>

#include "lmthresh/detail/text.hpp"

namespace lmthresh {

Series read_series(std::istream& in, std::string id, std::size_t column) {
    Series s;
    s.id = std::move(id);
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_skippable(line)) continue;
        const auto fields = detail::split_fields(line);
        const std::string where = s.id + ":" + std::to_string(line_no) + ": ";
        if (column >= fields.size()) {
            throw SeriesError(where + "missing column " + std::to_string(column + 1));
        }
        const auto value = detail::parse_double(fields[column]);
        if (!value) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw SeriesError(where + "non-numeric value '" + std::string(fields[column]) + "'");
        }
        header_allowed = false;
        s.values.push_back(*value);
    }
    if (in.bad()) throw SeriesError(s.id + ": read error");
    return s;
}

Series read_series_file(const std::filesystem::path& path, std::size_t column) {
    std::ifstream in(path);
    if (!in) throw SeriesError(path.string() + ": cannot open file");
    return read_series(in, path.string(), column);
}

}  // namespace lmthresh
