#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weakframe {

enum class ErrorCode {
  InvalidArgument,
  DegenerateVector,
  AntipodalPair,
  DegenerateArc,
  AmbiguousLift,
  DegeneratePolygonal,
  AmbiguousReturnPoint,
  ZeroTorsion,
  ZeroCurvature,
  SearchFailed,
  EvalOutOfDomain,
  FrameUndefined,
  BlowUp,
  NotConverged,
  ZeroTorsionDensity,
  ParseError,
  UnknownModel,
};

std::string_view to_string(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry a 1-based position; column 0 means "whole line".
class ParseError : public GeometryError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : GeometryError(ErrorCode::ParseError,
                      "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace weakframe
