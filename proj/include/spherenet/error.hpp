#pragma once

#include <stdexcept>
#include <string>

namespace spherenet {

// Argument outside the mathematical domain of an operation (t <= 0, |c| > 1, n < 2 where n >= 2 is required).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Operands of incompatible dimension.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Exact integer result does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

// Full word enumeration would exceed the leaf cap; the caller must switch to sampled mode.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double log2_required)
      : std::runtime_error(what), log2_required_(log2_required) {}
  double log2_required() const { return log2_required_; }

 private:
  double log2_required_;
};

// Quadrature grid too coarse for the requested harmonic degree.
class ResolutionError : public std::invalid_argument {
 public:
  explicit ResolutionError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file; line is 1-based, 0 when not applicable.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace spherenet
