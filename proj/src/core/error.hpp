#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dnodal {

/// Coarse failure classes. The C API and the CLI map these onto status and
/// exit codes, so the set is deliberately small.
enum class ErrorCategory {
    config,          // bad option values, invalid ranges
    parse,           // malformed problem file, expression or CSV
    invalid_problem, // standing assumptions violated (zero mean, finiteness)
    numeric,         // bracketing, calibration, resolution, radicand
    io,              // file access
};

const char* category_name(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}
    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

/// Position is 1-based; zero means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(ErrorCategory::parse, format(what, line, column)),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, int line, int column);
    int line_;
    int column_;
};

class InvalidProblem : public Error {
public:
    explicit InvalidProblem(const std::string& what)
        : Error(ErrorCategory::invalid_problem, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

/// |lambda| h exceeds the oscillation guard.
class ResolutionError : public NumericError {
public:
    ResolutionError(const std::string& what, int required_intervals)
        : NumericError(what), required_(required_intervals) {}
    int required_intervals() const noexcept { return required_; }

private:
    int required_;
};

class MagnitudeError : public NumericError {
public:
    using NumericError::NumericError;
};

class BracketingError : public NumericError {
public:
    BracketingError(const std::string& what, std::vector<double> samples)
        : NumericError(what), samples_(std::move(samples)) {}
    const std::vector<double>& samples() const noexcept { return samples_; }

private:
    std::vector<double> samples_;
};

class AmbiguityError : public NumericError {
public:
    AmbiguityError(const std::string& what, std::vector<double> candidates)
        : NumericError(what), candidates_(std::move(candidates)) {}
    const std::vector<double>& candidates() const noexcept { return candidates_; }

private:
    std::vector<double> candidates_;
};

class CalibrationError : public NumericError {
public:
    using NumericError::NumericError;
};

class InsufficientData : public NumericError {
public:
    using NumericError::NumericError;
};

class ReconstructionError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace dnodal
