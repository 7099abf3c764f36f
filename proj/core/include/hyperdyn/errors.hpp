#pragma once

#include <stdexcept>
#include <string>

namespace hyperdyn {

/// An operation was called outside its mathematical domain (division by zero,
/// negative power of a singular matrix, a point that leaves the square, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed textual input.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hyperdyn
