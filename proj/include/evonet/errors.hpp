#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evonet {

//! Rejected argument values: negative rates, probabilities outside [0,1],
//! zero-size networks, and similar. Maps to CLI exit code 1.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

//! Arguments that are individually valid but outside a formula's domain
//! (e.g. a network too small for the diameter estimate). Maps to exit code 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

//! A graph metric required a connected graph and found an unreachable node.
class ConnectivityError : public std::runtime_error {
 public:
  ConnectivityError(const std::string& what, std::uint32_t unreachable)
      : std::runtime_error(what), unreachable_(unreachable) {}

  //! One witness node that could not be reached.
  std::uint32_t unreachable_node() const { return unreachable_; }

 private:
  std::uint32_t unreachable_;
};

//! The model degenerated: subcritical branching factor, no equilibrium in
//! range, and similar. Maps to exit code 3.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Malformed input data. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::uint64_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::uint64_t line() const { return line_; }

 private:
  std::uint64_t line_;
};

//! Filesystem failures: unreadable input, unwritable output. Exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace evonet
