#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rumor {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// Strict parsers: the whole (trimmed) field must be consumed.
double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);
std::uint64_t parse_uint(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Text table backing every CSV the toolkit writes. Comment lines are
/// emitted as `# ...` before the header.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name` in `columns`; throws std::out_of_range if absent.
    std::size_t column(std::string_view name) const;
    /// Column parsed as doubles.
    std::vector<double> numeric(std::string_view name) const;
};

void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

}  // namespace rumor
