#include "sticky/error.h"

namespace sticky {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOverlap: return "Overlap";
    case ErrorCode::kRadiiMismatch: return "RadiiMismatch";
    case ErrorCode::kConstructionFailed: return "ConstructionFailed";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotAGroup: return "NotAGroup";
    case ErrorCode::kNotDivisible: return "NotDivisible";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kInfeasibleEndpoint: return "InfeasibleEndpoint";
    case ErrorCode::kRelaxationFailed: return "RelaxationFailed";
    case ErrorCode::kColorRadiiConflict: return "ColorRadiiConflict";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace sticky
