#pragma once

#include <stdexcept>
#include <string>

namespace biham {

enum class ErrorKind {
  ChartMismatch,
  DimensionMismatch,
  Degenerate,
  NonReal,
  InvalidArgument,
  /// A computation that is expected to succeed did not (e.g. a deformation
  /// sequence that fails to terminate). Indicates a bug, not bad input.
  Internal,
};

/// Every failure raised by the library. The message carries the guard name
/// (e.g. "degenerate point", "eigenvalue collision").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace biham
