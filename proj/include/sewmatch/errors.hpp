#pragma once

#include <stdexcept>
#include <string>

namespace sewmatch {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (not parseable at all).
struct ParseError : Error {
    using Error::Error;
};

// Parseable but missing or mistyped fields, or unsupported constructs.
struct SchemaError : Error {
    using Error::Error;
};

// Structurally parseable data violating pattern invariants.
struct ValidationError : Error {
    using Error::Error;
};

struct MergeError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct CheckpointError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace sewmatch
