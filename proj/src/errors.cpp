#include "cubemill/errors.hpp"

namespace cubemill {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RepeatedCorner: return "RepeatedCorner";
    case ErrorCode::NonFaceIntersection: return "NonFaceIntersection";
    case ErrorCode::MissingFace: return "MissingFace";
    case ErrorCode::BadCornerCount: return "BadCornerCount";
    case ErrorCode::CellNotFound: return "CellNotFound";
    case ErrorCode::UnlabeledVertex: return "UnlabeledVertex";
    case ErrorCode::NotASubdivision: return "NotASubdivision";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotFoldable: return "NotFoldable";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotTopCell: return "NotTopCell";
    case ErrorCode::NotInTile: return "NotInTile";
    case ErrorCode::NotABridge: return "NotABridge";
    case ErrorCode::CarrierViolation: return "CarrierViolation";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::NonSeparatingMirror: return "NonSeparatingMirror";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cubemill
