#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace louvain {

// Input could not be parsed (bad syntax, out-of-range ids, negative weights).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Graph cannot be clustered (no edge weight, m == 0).
class DegenerateGraphError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural invariant the engine relies on was violated; indicates a bug,
// not bad user input.
class InternalError : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace louvain
