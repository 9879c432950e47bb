#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace waring {

// Argument outside the mathematical domain of an operation (l = 0, mu <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured size limit (sieve bound, oracle range, ...).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Inconsistent run or split configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Quadrature grid too coarse for an exact evaluation.
class GridError : public std::invalid_argument {
 public:
  GridError(const std::string& what, std::uint64_t required_size)
      : std::invalid_argument(what + " (required M >= " + std::to_string(required_size) + ")"),
        required_size_(required_size) {}
  std::uint64_t required_size() const noexcept { return required_size_; }

 private:
  std::uint64_t required_size_;
};

}  // namespace waring
