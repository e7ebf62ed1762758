#pragma once

#include <stdexcept>
#include <string>

namespace sors {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A path referenced a pair of requirements with no explicit dependency.
class MissingEdgeError : public Error {
 public:
  using Error::Error;
};

/// Inputs of an operation disagree on requirement or value-type counts.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Instance exceeds the size cap of a brute-force reference operation.
class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

/// Input text is not well-formed JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// JSON is well-formed but fields are missing, unknown, or of the wrong type.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A domain invariant is violated; the message names the offending record.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sors
