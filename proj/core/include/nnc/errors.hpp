#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nnc {

/// Invalid distribution, probability or model parameter.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed CSV / JSON input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structurally valid input that violates a graph invariant (e.g. a self-edge).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An estimator was asked to weight an attained exposure level with probability zero.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Fixed-point noise fit hit |u1 - alpha| ~ 0.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-point noise fit left [0, 1] by more than the clamp band.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment-level failure (too many failed trials, unreadable sources, I/O).
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nnc
