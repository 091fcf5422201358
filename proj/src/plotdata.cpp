#include "tsecon/plotdata.hpp"

#include "tsecon/errors.hpp"

#include <fmt/format.h>

#include <fstream>

namespace tsecon {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

} // namespace

double decimal_year(Period p) { return p.year + (p.quarter - 1) / 4.0; }

void write_xy(const std::filesystem::path& path, std::span<const double> x, std::span<const double> y,
              const std::string& header) {
    if (x.size() != y.size()) throw DomainError("plot columns differ in length");
    auto out = open_out(path);
    out << "# " << header << '\n';
    for (size_t i = 0; i < x.size(); ++i) out << fmt::format("{:.10g} {:.10g}\n", x[i], y[i]);
}

void write_xy(const std::filesystem::path& path, const TimeSeries& s) {
    std::vector<double> x(s.size());
    for (size_t i = 0; i < s.size(); ++i) x[i] = decimal_year(s.period_at(i));
    write_xy(path, x, s.values(), "year " + s.name());
}

void write_band(const std::filesystem::path& path, std::span<const double> x, std::span<const double> y,
                std::span<const double> lo, std::span<const double> hi, const std::string& header) {
    if (x.size() != y.size() || x.size() != lo.size() || x.size() != hi.size())
        throw DomainError("plot columns differ in length");
    auto out = open_out(path);
    out << "# " << header << '\n';
    for (size_t i = 0; i < x.size(); ++i)
        out << fmt::format("{:.10g} {:.10g} {:.10g} {:.10g}\n", x[i], y[i], lo[i], hi[i]);
}

void write_band(const std::filesystem::path& path, const std::vector<ForecastRow>& rows) {
    std::vector<double> x, y, lo, hi;
    for (const auto& r : rows) {
        x.push_back(decimal_year(r.period));
        y.push_back(r.point);
        lo.push_back(r.lower);
        hi.push_back(r.upper);
    }
    write_band(path, x, y, lo, hi, "year forecast lower upper");
}

} // namespace tsecon
