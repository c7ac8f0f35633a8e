#include "weakframe/errors.hpp"

namespace weakframe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::AntipodalPair: return "AntipodalPair";
    case ErrorCode::DegenerateArc: return "DegenerateArc";
    case ErrorCode::AmbiguousLift: return "AmbiguousLift";
    case ErrorCode::DegeneratePolygonal: return "DegeneratePolygonal";
    case ErrorCode::AmbiguousReturnPoint: return "AmbiguousReturnPoint";
    case ErrorCode::ZeroTorsion: return "ZeroTorsion";
    case ErrorCode::ZeroCurvature: return "ZeroCurvature";
    case ErrorCode::SearchFailed: return "SearchFailed";
    case ErrorCode::EvalOutOfDomain: return "EvalOutOfDomain";
    case ErrorCode::FrameUndefined: return "FrameUndefined";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ZeroTorsionDensity: return "ZeroTorsionDensity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownModel: return "UnknownModel";
  }
  return "Unknown";
}

}  // namespace weakframe
