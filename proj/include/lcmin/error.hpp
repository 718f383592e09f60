/**
 * @file error.hpp
 * @brief Exception types shared by every lcmin module.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcmin {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  ScaleMismatch,
  OutOfRange,
  EmptyShell,
  NonPositiveEntry,
  NumericBreakdown,
  TargetOutsideHull,
  AllInfinite,
  EmptyKGrid,
  EmptySGrid,
  NotNormalized,
  GridMismatch,
  LevelNotFound,
  BoxTooSmall,
  Validation,
  Schema,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lcmin
