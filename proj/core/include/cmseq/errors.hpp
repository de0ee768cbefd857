#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmseq {

/// Malformed or out-of-domain user input (bad literal, nonpositive pole, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parse failure carrying the byte offset of the offending character.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A requested computation exceeds the configured search budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proved verdict contradicts an exact counterexample. Indicates a bug.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cmseq
