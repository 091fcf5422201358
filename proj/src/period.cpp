#include "tsecon/period.hpp"

#include <cctype>
#include <charconv>
#include <fmt/format.h>

#include "tsecon/errors.hpp"

namespace tsecon {

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Period::Period(int y, int q) : year(y), quarter(q) {
    if (q < 1 || q > 4) throw DomainError(fmt::format("quarter {} outside 1..4", q));
}

Period Period::from_ordinal(long ord) {
    long y = ord >= 0 ? ord / 4 : (ord - 3) / 4;
    return {static_cast<int>(y), static_cast<int>(ord - y * 4) + 1};
}

Period Period::parse(std::string_view text) {
    text = trim(text);
    int year = 0;
    int sub = 0;
    auto pos = text.find_first_of("Qq:-");
    auto rest = pos == std::string_view::npos ? std::string_view{} : text.substr(pos + 1);
    // full ISO dates: the day is checked for shape and otherwise ignored
    if (pos != std::string_view::npos && text[pos] == '-' && rest.size() == 5 && rest[2] == '-') {
        int day = 0;
        if (!parse_int(rest.substr(3), day) || day < 1 || day > 31)
            throw DomainError(fmt::format("unrecognised period '{}'", text));
        rest = rest.substr(0, 2);
    }
    if (pos == std::string_view::npos || !parse_int(text.substr(0, pos), year) || !parse_int(rest, sub))
        throw DomainError(fmt::format("unrecognised period '{}'", text));
    if (text[pos] == '-') {
        if (sub < 1 || sub > 12) throw DomainError(fmt::format("month out of range in '{}'", text));
        return {year, (sub - 1) / 3 + 1};
    }
    if (sub < 1 || sub > 4) throw DomainError(fmt::format("quarter out of range in '{}'", text));
    return {year, sub};
}

std::string Period::to_string() const { return fmt::format("{}Q{}", year, quarter); }

SampleRange::SampleRange(Period f, Period t) : from(f), to(t) {
    if (t < f) throw DomainError(fmt::format("empty range {}:{}", f.to_string(), t.to_string()));
}

SampleRange SampleRange::parse(std::string_view text) {
    text = trim(text);
    // "1980:1:2006:1" has three colons; split on the middle one.
    std::size_t colons = 0;
    for (char c : text) colons += c == ':';
    std::size_t split = std::string_view::npos;
    if (colons == 1) {
        split = text.find(':');
    } else if (colons == 3) {
        split = text.find(':', text.find(':') + 1);
    }
    if (split == std::string_view::npos) throw DomainError(fmt::format("unrecognised range '{}'", text));
    return {Period::parse(text.substr(0, split)), Period::parse(text.substr(split + 1))};
}

} // namespace tsecon
