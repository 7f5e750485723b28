#pragma once

#include <stdexcept>
#include <string>

namespace bubbletile {

// Base class for everything this library throws on purpose. Callers that
// want a single catch can take Error&; the subclasses exist so tests and the
// CLI can tell configuration mistakes from numerical ones.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (pressure outside the
// curve span, coincident markers, negative volume).
class DomainError : public Error {
public:
    using Error::Error;
};

// Bad or inconsistent configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Least-squares fit rejected (rank deficient data, non-monotone result).
class FitError : public Error {
public:
    using Error::Error;
};

// Run aggregation impossible (no overlapping support, mismatched metrics).
class AggregationError : public Error {
public:
    using Error::Error;
};

// Bus schedule violates converter timing limits.
class ScheduleError : public Error {
public:
    using Error::Error;
};

// Tile position falls outside the reporting grid.
class EmbedError : public Error {
public:
    using Error::Error;
};

// Two time series cannot be index-matched within a frame period.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Filesystem or parse failure.
class IoError : public Error {
public:
    using Error::Error;
};

// Dynamics integration produced a non-finite state.
class IntegrationError : public Error {
public:
    using Error::Error;
};

} // namespace bubbletile
