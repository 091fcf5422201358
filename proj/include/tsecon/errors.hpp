#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsecon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete input data. `row` is the 1-based file line, 0 if unknown.
class IngestError : public Error {
public:
    IngestError(const std::string& msg, std::size_t row = 0)
        : Error(row ? "line " + std::to_string(row) + ": " + msg : msg), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Precondition violated by the caller (bad range, order, shape...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Singular matrices, non-finite intermediate values.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg, long index = -1)
        : Error(index >= 0 ? msg + " (at index " + std::to_string(index) + ")" : msg), index_(index) {}
    [[nodiscard]] long index() const noexcept { return index_; }

private:
    long index_;
};

/// Estimation failed to converge; carries the optimizer trace.
class FitError : public Error {
public:
    FitError(const std::string& msg, std::string trace = {})
        : Error(msg), trace_(std::move(trace)) {}
    [[nodiscard]] const std::string& trace() const noexcept { return trace_; }

private:
    std::string trace_;
};

} // namespace tsecon
