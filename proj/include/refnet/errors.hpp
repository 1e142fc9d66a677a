#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refnet {

// Input and file-format failures. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse and algorithm precondition failures. CLI exit code 3.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyGraphError : public ValidationError {
 public:
  EmptyGraphError() : ValidationError("graph has no edges (m = 0)") {}
  explicit EmptyGraphError(const std::string& msg) : ValidationError(msg) {}
};

class BadLabelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : ValidationError(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TimestampError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NodeNotFoundError : public ContractError {
 public:
  explicit NodeNotFoundError(const std::string& label)
      : ContractError("node not found: " + label) {}
};

class NoOpError : public ContractError {
 public:
  using ContractError::ContractError;
};

class PartitionMismatchError : public ContractError {
 public:
  using ContractError::ContractError;
};

class NoCandidatesError : public ContractError {
 public:
  NoCandidatesError() : ContractError("candidate list is empty") {}
};

class DirectedInputError : public ContractError {
 public:
  DirectedInputError()
      : ContractError(
            "louvain requires an undirected graph; convert with to_undirected first") {}
};

}  // namespace refnet
