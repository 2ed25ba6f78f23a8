#pragma once

#include <stdexcept>
#include <string>

namespace wsc {

// Base class for all errors raised while loading or validating inputs.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed document (bad JSON, missing fields, wrong shape).
struct ParseError : Error {
    using Error::Error;
};

// Structurally well-formed input that violates a model invariant
// (isA cycle, duplicate IRI, dangling reference, invalid property set).
struct ValidationError : Error {
    using Error::Error;
};

// Lookup of a concept, property or service id that does not exist.
struct LookupError : Error {
    using Error::Error;
};

}  // namespace wsc
