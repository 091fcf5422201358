#include "tsecon/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "tsecon/errors.hpp"

namespace tsecon {

TimeSeries::TimeSeries(std::string name, Period start, std::vector<double> values)
    : name_(std::move(name)), start_(start), values_(std::move(values)) {
    if (values_.empty()) throw DomainError("series '" + name_ + "' is empty");
}

double TimeSeries::at(const Period& p) const {
    long i = p - start_;
    if (i < 0 || i >= static_cast<long>(values_.size()))
        throw DomainError(fmt::format("{} outside series '{}' ({}:{})", p.to_string(), name_,
                                      start_.to_string(), end().to_string()));
    return values_[static_cast<std::size_t>(i)];
}

namespace {

std::string strip(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c) && c != '"'; };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(strip(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
};

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open " + path.string());
    Table t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (strip(line).empty() || strip(line).front() == '#') continue;
        if (t.header.empty()) {
            t.header = split_csv(line);
            continue;
        }
        t.rows.push_back(split_csv(line));
        t.line_numbers.push_back(lineno);
    }
    if (t.header.empty()) throw IngestError("no header row in " + path.string());
    return t;
}

std::size_t column_index(const Table& t, const std::string& name) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw IngestError("column '" + name + "' not found");
    return static_cast<std::size_t>(it - t.header.begin());
}

std::vector<Period> parse_dates(const Table& t, std::size_t col) {
    std::vector<Period> periods;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        std::size_t line = t.line_numbers[r];
        if (col >= row.size() || row[col].empty()) throw IngestError("missing date", line);
        Period p;
        try {
            p = Period::parse(row[col]);
        } catch (const DomainError& e) {
            throw IngestError(e.what(), line);
        }
        if (!periods.empty()) {
            Period expected = periods.back() + 1;
            if (p == periods.back()) throw IngestError("duplicate period " + p.to_string(), line);
            if (p != expected)
                throw IngestError(fmt::format("non-consecutive period {} (gap at {})", p.to_string(),
                                              expected.to_string()),
                                  line);
        }
        periods.push_back(p);
    }
    if (periods.empty()) throw IngestError("no data rows");
    return periods;
}

std::vector<double> parse_values(const Table& t, std::size_t col) {
    std::vector<double> values;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        std::size_t line = t.line_numbers[r];
        if (col >= row.size() || row[col].empty()) throw IngestError("missing value", line);
        const std::string& cell = row[col];
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
            throw IngestError("unparseable number '" + cell + "'", line);
        values.push_back(v);
    }
    return values;
}

} // namespace

TimeSeries load_csv(const std::filesystem::path& path, const std::string& date_column,
                    const std::string& value_column) {
    Table t = read_table(path);
    auto periods = parse_dates(t, column_index(t, date_column));
    auto values = parse_values(t, column_index(t, value_column));
    return {value_column, periods.front(), std::move(values)};
}

std::vector<TimeSeries> load_csv_all(const std::filesystem::path& path, const std::string& date_column) {
    Table t = read_table(path);
    std::size_t dcol = column_index(t, date_column);
    auto periods = parse_dates(t, dcol);
    std::vector<TimeSeries> out;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c == dcol) continue;
        out.emplace_back(t.header[c], periods.front(), parse_values(t, c));
    }
    return out;
}

TimeSeries diff(const TimeSeries& s, int order) {
    if (order < 1) throw DomainError("difference order must be >= 1");
    if (static_cast<std::size_t>(order) >= s.size())
        throw DomainError(fmt::format("cannot difference {} times a series of length {}", order, s.size()));
    std::vector<double> v = s.data();
    for (int k = 0; k < order; ++k) {
        for (std::size_t i = v.size() - 1; i > 0; --i) v[i] -= v[i - 1];
        v.erase(v.begin());
    }
    std::string name = order == 1 ? "d_" + s.name() : fmt::format("d{}_{}", order, s.name());
    return {name, s.start() + order, std::move(v)};
}

TimeSeries ldiff_scaled(const TimeSeries& s, double scale) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!(s[i] > 0.0))
            throw DomainError(fmt::format("non-positive value {} at {} in '{}'", s[i], s.period_at(i).to_string(),
                                          s.name()));
    if (s.size() < 2) throw DomainError("log-difference needs at least two observations");
    std::vector<double> v(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) v[i - 1] = scale * (std::log(s[i]) - std::log(s[i - 1]));
    return {"ld_" + s.name(), s.start() + 1, std::move(v)};
}

TimeSeries slice(const TimeSeries& s, const SampleRange& range) {
    if (!s.covers(range))
        throw DomainError(fmt::format("range {} outside series '{}' ({}:{})", range.to_string(), s.name(),
                                      s.start().to_string(), s.end().to_string()));
    auto first = s.data().begin() + (range.from - s.start());
    return {s.name(), range.from, std::vector<double>(first, first + range.length())};
}

std::vector<TimeSeries> align(const std::vector<TimeSeries>& series) {
    if (series.empty()) return {};
    Period from = series.front().start();
    Period to = series.front().end();
    for (const auto& s : series) {
        from = std::max(from, s.start());
        to = std::min(to, s.end());
    }
    if (to < from) throw DomainError("series do not overlap");
    std::vector<TimeSeries> out;
    for (const auto& s : series) out.push_back(slice(s, {from, to}));
    return out;
}

} // namespace tsecon
