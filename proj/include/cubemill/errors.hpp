#pragma once

#include <stdexcept>
#include <string>

namespace cubemill {

enum class ErrorCode {
  RepeatedCorner,
  NonFaceIntersection,
  MissingFace,
  BadCornerCount,
  CellNotFound,
  UnlabeledVertex,
  NotASubdivision,
  UnsupportedDimension,
  NotFoldable,
  NotAdmissible,
  NotTopCell,
  NotInTile,
  NotABridge,
  CarrierViolation,
  NoCrossing,
  NonSeparatingMirror,
  Unsupported,
  InvalidArgument,
  ParseError,
  Internal,
};

const char* to_string(ErrorCode code);

// Every failure the library raises carries one of the codes above so that
// callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace cubemill
