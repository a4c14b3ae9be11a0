#pragma once

#include <stdexcept>
#include <string>

namespace paleoarima {

/// Base class for everything wrong with user-supplied input (files, flags,
/// column maps, malformed numbers). The CLI maps these to exit code 2.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string &msg) : std::runtime_error(msg) {}
};

/// A required column is missing or the file layout does not match the map.
class schema_error : public input_error {
public:
  explicit schema_error(const std::string &msg) : input_error(msg) {}
};

/// A cell could not be parsed as a number; message carries the line number.
class parse_error : public input_error {
public:
  explicit parse_error(const std::string &msg) : input_error(msg) {}
};

/// Parsed values violate a table invariant (ordering, spacing, finiteness).
class validation_error : public input_error {
public:
  explicit validation_error(const std::string &msg) : input_error(msg) {}
};

} // namespace paleoarima
