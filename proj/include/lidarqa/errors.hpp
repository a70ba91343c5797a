#pragma once

#include <stdexcept>
#include <string>

namespace lidarqa {

// Base for all toolkit errors so callers can catch one type at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct InsufficientData : Error {
  using Error::Error;
};

struct DegenerateGeometry : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

struct UnsupportedFormat : Error {
  using Error::Error;
};

struct CorruptFile : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct LookupError : Error {
  using Error::Error;
};

}  // namespace lidarqa
