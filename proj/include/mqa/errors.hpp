#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mqa {

// Base for everything this library throws on its own behalf.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be opened, read or written.
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

// Bad flag combinations, out-of-range knobs, malformed config files.
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Structurally invalid input data. line is 1-based, 0 when not line-scoped.
struct SchemaError : Error {
  SchemaError(const std::string& what, std::size_t line_no = 0, std::string field_name = {})
      : Error(what), line(line_no), field(std::move(field_name)) {}
  std::size_t line;
  std::string field;
};

// A category surface form not covered by the active vocabulary.
struct UnknownCategoryError : SchemaError {
  UnknownCategoryError(const std::string& what, std::size_t line_no, std::string bad_value)
      : SchemaError(what, line_no, "category"), value(std::move(bad_value)) {}
  std::string value;
};

// Parallel reference/hypothesis lists of different sizes.
struct LengthMismatchError : Error {
  explicit LengthMismatchError(const std::string& what) : Error(what) {}
};

}  // namespace mqa
