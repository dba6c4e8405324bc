#ifndef HOPI_ERRORS_HPP
#define HOPI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopi {

struct TermError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |params| != |args| at an application.
struct ArityError : TermError {
  using TermError::TermError;
};

// Argument kind does not match parameter kind, or a term that can never
// become an abstraction is applied to arguments.
struct KindError : TermError {
  using TermError::TermError;
};

// A freshness precondition was violated (e.g. the trigger name of a
// factorization occurs in the context or the payload).
struct FreshnessError : TermError {
  using TermError::TermError;
};

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

}  // namespace hopi

#endif
