#pragma once

#include <stdexcept>
#include <string>

namespace ombc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A matrix could not be Cholesky-factorized, even after ridge repair.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// An argument fell outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A mixture component collapsed below the minimum effective size.
class EmptyComponent : public Error {
public:
    using Error::Error;
};

/// Fewer data points than requested groups.
class TooFewPoints : public Error {
public:
    using Error::Error;
};

/// A component is too small for its Beta reference to exist.
class DegenerateComponent : public Error {
public:
    using Error::Error;
};

/// The removal budget would exhaust the data.
class InfeasibleBudget : public Error {
public:
    using Error::Error;
};

/// No step of a trace is usable for selection.
class NoValidStep : public Error {
public:
    using Error::Error;
};

/// A selection refers to an invalid trace step.
class InvalidStep : public Error {
public:
    using Error::Error;
};

/// Unrecognized simulation scenario identifiers.
class UnknownScenario : public Error {
public:
    using Error::Error;
};

/// Rejection sampling hit its proposal cap.
class RejectionStall : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Carries 1-based row/column location.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t row, std::size_t col)
        : Error(msg + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")"),
          row_(row),
          col_(col) {}
    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ombc
