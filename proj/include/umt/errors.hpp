#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umt {

/// Malformed Newick, atom or sidecar text. `position` is a byte offset (or line number for sidecars).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Caller broke an operation's precondition (unknown species, leaf-set mismatch...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace umt
