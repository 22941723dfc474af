#pragma once

#include <stdexcept>
#include <string>

namespace cgt {

enum class ErrorKind {
  MalformedWord,
  MalformedInput,
  DegenerateEdge,
  NotInClosure,
  UnsupportedParameters,
  Precondition,
  Budget,
  ConstructionUnavailable,
};

const char* to_string(ErrorKind kind);

// Every library failure is reported through this one exception type; the
// kind decides how the CLI maps it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cgt
