#pragma once

#include <stdexcept>
#include <string>

namespace collab {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (CSV, TSV, sidecar metadata).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Violated structural contract: duplicate ids, unknown entities, shape mismatch.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// An indicator is undefined for the given counts (empty union, zero own output, ...).
class IndicatorError : public Error {
public:
    explicit IndicatorError(const std::string& what) : Error(what) {}
};

}  // namespace collab
