#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mallows {

// Argument outside an operation's domain (phi outside [0,1], mismatched
// alternative sets, empty selections, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Value outside the representable range of a result, e.g. h_swap(0) = +inf.
class RangeError : public std::range_error {
  public:
    using std::range_error::range_error;
};

// Brute-force helpers refuse inputs whose enumeration would be too large.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

// Iterative numerics that failed to converge.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Config files that fail validation.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace mallows
