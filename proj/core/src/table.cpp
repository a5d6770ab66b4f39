#include "rumor/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rumor {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

namespace {

template <typename T>
T parse_number(std::string_view raw, const char* what) {
    const auto s = trim(raw);
    T value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string("not a valid ") + what + ": '" + std::string(raw) + "'");
    }
    return value;
}

}  // namespace

double parse_double(std::string_view s) {
    const auto t = trim(s);
    if (t == "inf") {
        return INFINITY;
    }
    if (t == "-inf") {
        return -INFINITY;
    }
    if (t == "nan") {
        return NAN;
    }
    return parse_number<double>(s, "number");
}

std::int64_t parse_int(std::string_view s) {
    return parse_number<std::int64_t>(s, "integer");
}

std::uint64_t parse_uint(std::string_view s) {
    return parse_number<std::uint64_t>(s, "nonnegative integer");
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("no column '" + std::string(name) + "'");
}

std::vector<double> Table::numeric(std::string_view name) const {
    const auto c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(parse_double(row.at(c)));
    }
    return out;
}

void write_csv(std::ostream& out, const Table& table) {
    for (const auto& c : table.comments) {
        out << "# " << c << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    }
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            t.comments.emplace_back(trim(std::string_view(line).substr(1)));
            continue;
        }
        auto cells = split(line, ',');
        if (!header) {
            t.columns = std::move(cells);
            header = true;
        } else {
            if (cells.size() != t.columns.size()) {
                throw std::invalid_argument("row has " + std::to_string(cells.size()) + " cells, expected " +
                                            std::to_string(t.columns.size()));
            }
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

}  // namespace rumor
