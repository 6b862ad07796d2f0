#ifndef CLUSTERLENS_ERRORS_HPP
#define CLUSTERLENS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clusterlens {

/**
 * Base class for all errors raised by the library.
 * Each subclass corresponds to one failure category so that callers (CLI, HTTP service)
 * can map them onto exit codes or status codes without inspecting messages.
 */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened or read.
class IoError : public Error {
public:
    using Error::Error;
};

/// Column-role mapping is inconsistent with the file header.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A cell could not be parsed. Row and column are 1-based, counting the header as row 1.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t row, std::size_t column)
        : Error(message + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row), column_(column) {}

    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// Parsed data violates a dataset invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unknown cluster, feature, or term.
class LookupError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class InsufficientSampleError : public Error {
public:
    using Error::Error;
};

/// Both groups have zero variance, so the t statistic has a zero denominator.
class DegenerateVarianceError : public Error {
public:
    using Error::Error;
};

/// Too many features selected for the cell encoding.
class LimitError : public Error {
public:
    using Error::Error;
};

}

#endif
