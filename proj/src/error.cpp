#include "redistrict/error.hpp"

namespace redistrict {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::RaggedRows: return "RAGGED_ROWS";
    case ErrorCode::UnparseableNumber: return "UNPARSEABLE_NUMBER";
    case ErrorCode::NegativeDensity: return "NEGATIVE_DENSITY";
    case ErrorCode::NegativeId: return "NEGATIVE_ID";
    case ErrorCode::AllOutside: return "ALL_OUTSIDE";
    case ErrorCode::MalformedImage: return "MALFORMED_IMAGE";
    case ErrorCode::UnknownColor: return "UNKNOWN_COLOR";
    case ErrorCode::DuplicateColor: return "DUPLICATE_COLOR";
    case ErrorCode::MalformedPalette: return "MALFORMED_PALETTE";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::EmptyRegion: return "EMPTY_REGION";
    case ErrorCode::IndivisibleRegion: return "INDIVISIBLE_REGION";
    case ErrorCode::DegenerateCut: return "DEGENERATE_CUT";
    case ErrorCode::TooFewCells: return "TOO_FEW_CELLS";
    case ErrorCode::InvalidDistrictCount: return "INVALID_DISTRICT_COUNT";
    case ErrorCode::InvalidTargetFraction: return "INVALID_TARGET_FRACTION";
    case ErrorCode::LineOffRegion: return "LINE_OFF_REGION";
    case ErrorCode::NotInterior: return "NOT_INTERIOR";
    case ErrorCode::NonpositiveDelta: return "NONPOSITIVE_DELTA";
    case ErrorCode::InvalidTolerance: return "INVALID_TOLERANCE";
    case ErrorCode::InvalidDistrictMap: return "INVALID_DISTRICT_MAP";
    case ErrorCode::EmptyDistrict: return "EMPTY_DISTRICT";
    case ErrorCode::EmptyList: return "EMPTY_LIST";
    case ErrorCode::DegenerateP: return "DEGENERATE_P";
    case ErrorCode::InvalidDof: return "INVALID_DOF";
    case ErrorCode::NegativeY: return "NEGATIVE_Y";
    case ErrorCode::InvalidRatio: return "INVALID_RATIO";
    case ErrorCode::HeterogeneousN: return "HETEROGENEOUS_N";
    case ErrorCode::InvalidVoterCount: return "INVALID_VOTER_COUNT";
    case ErrorCode::InvalidAlpha: return "INVALID_ALPHA";
    case ErrorCode::MalformedInput: return "MALFORMED_INPUT";
  }
  return "UNKNOWN";
}

}  // namespace redistrict
