#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace tsecon {

/// A calendar quarter.
struct Period {
    int year = 1970;
    int quarter = 1;

    Period() = default;
    Period(int y, int q);

    /// Accepts "1980Q1", "1980:1" and "1980-01" (month mapped to its quarter).
    static Period parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;
    /// Quarters since year 0, used for arithmetic.
    [[nodiscard]] long ordinal() const noexcept { return static_cast<long>(year) * 4 + (quarter - 1); }
    static Period from_ordinal(long ord);

    Period operator+(long k) const { return from_ordinal(ordinal() + k); }
    Period operator-(long k) const { return from_ordinal(ordinal() - k); }
    long operator-(const Period& other) const noexcept { return ordinal() - other.ordinal(); }
    Period& operator++() { return *this = *this + 1; }

    auto operator<=>(const Period&) const = default;
};

struct SampleRange {
    Period from;
    Period to;

    SampleRange() = default;
    SampleRange(Period f, Period t);
    /// "1980Q1:2006Q1" (any accepted period spelling on each side).
    static SampleRange parse(std::string_view text);

    [[nodiscard]] long length() const noexcept { return (to - from) + 1; }
    [[nodiscard]] bool contains(const Period& p) const noexcept { return from <= p && p <= to; }
    [[nodiscard]] std::string to_string() const { return from.to_string() + ":" + to.to_string(); }
};

} // namespace tsecon
