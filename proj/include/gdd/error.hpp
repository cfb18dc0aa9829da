#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdd {

enum class ErrorKind {
  NonIntegral,
  MalformedDesign,
  MissingHoles,
  MissingResolution,
  UnmappedPoint,
  UnsupportedStep,
  DuplicateBlock,
  CollapsedBlock,
  SyntaxError,
  PartitionError,
  TypeMismatch,
  NotPrimePower,
  TooManyGroups,
  BadParameter,
  MissingIngredient,
  BadIngredient,
  ForbiddenCase,
  AlignmentError,
  SizeMismatch,
  BadIndex,
  IoError,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception; `kind()` is
// stable and is what callers (and the CLI exit codes) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace gdd
