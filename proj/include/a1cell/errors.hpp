#pragma once

#include <stdexcept>
#include <string>

namespace a1cell {

/// Rejected user input: inadmissible Dynkin type, bad parameters, unknown symbols.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string &what) : std::invalid_argument(what) {}
};

/// An internal consistency check failed (composite-zero, uniqueness of a
/// deletion index, well-definedness of a realized differential, ...).
class InvariantViolation : public std::logic_error {
public:
  explicit InvariantViolation(const std::string &what) : std::logic_error(what) {}
};

} // namespace a1cell
