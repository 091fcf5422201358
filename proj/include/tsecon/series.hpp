#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tsecon/period.hpp"

namespace tsecon {

/// Quarterly series with contiguous values. Immutable after construction.
class TimeSeries {
public:
    /// Empty placeholder, only meaningful as an assignment target.
    TimeSeries() = default;
    TimeSeries(std::string name, Period start, std::vector<double> values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] Period start() const noexcept { return start_; }
    [[nodiscard]] Period end() const noexcept { return start_ + static_cast<long>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }
    [[nodiscard]] SampleRange range() const { return {start_, end()}; }

    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    /// Value at a period; DomainError when outside the series.
    [[nodiscard]] double at(const Period& p) const;
    [[nodiscard]] Period period_at(std::size_t i) const { return start_ + static_cast<long>(i); }
    [[nodiscard]] bool covers(const SampleRange& r) const noexcept { return start_ <= r.from && r.to <= end(); }

    [[nodiscard]] TimeSeries renamed(std::string name) const { return {std::move(name), start_, values_}; }

private:
    std::string name_;
    Period start_;
    std::vector<double> values_;
};

/// Reads a two-or-more column CSV. Lines starting with '#' are comments; the
/// first non-comment line is the header.
TimeSeries load_csv(const std::filesystem::path& path, const std::string& date_column,
                    const std::string& value_column);

/// All non-date columns of a CSV, in file order.
std::vector<TimeSeries> load_csv_all(const std::filesystem::path& path, const std::string& date_column = "date");

TimeSeries diff(const TimeSeries& s, int order = 1);
TimeSeries ldiff_scaled(const TimeSeries& s, double scale = 100.0);
TimeSeries slice(const TimeSeries& s, const SampleRange& range);

/// Restrict several series to their common span.
std::vector<TimeSeries> align(const std::vector<TimeSeries>& series);

} // namespace tsecon
