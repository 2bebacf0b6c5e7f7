#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coreecs {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A label is unknown, duplicated, or a value's kind does not match the schema.
struct SchemaError : Error {
    using Error::Error;
};

/// A component result does not conform to the shape demanded by a query.
struct ShapeError : Error {
    using Error::Error;
};

/// The fresh-entity counter cannot be advanced further.
struct CapacityError : Error {
    using Error::Error;
};

/// A static analysis was asked about a system it has no declaration for.
struct AnalysisError : Error {
    using Error::Error;
};

/// The parallel runtime failed to run a schedule; the state is discarded.
struct RuntimeError : Error {
    using Error::Error;
};

/// Enumerating all linearizations of a partial order would exceed the
/// configured limit. Carries the count found before giving up.
struct TooManyLinearizations : Error {
    explicit TooManyLinearizations(std::uint64_t estimate_)
        : Error("linearization count exceeds limit (at least " +
                std::to_string(estimate_) + ")"),
          estimate(estimate_) {}

    std::uint64_t estimate;
};

}  // namespace coreecs
