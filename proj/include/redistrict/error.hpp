#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace redistrict {

enum class ErrorCode {
  EmptyInput,
  RaggedRows,
  UnparseableNumber,
  NegativeDensity,
  NegativeId,
  AllOutside,
  MalformedImage,
  UnknownColor,
  DuplicateColor,
  MalformedPalette,
  DimensionMismatch,
  EmptyRegion,
  IndivisibleRegion,
  DegenerateCut,
  TooFewCells,
  InvalidDistrictCount,
  InvalidTargetFraction,
  LineOffRegion,
  NotInterior,
  NonpositiveDelta,
  InvalidTolerance,
  InvalidDistrictMap,
  EmptyDistrict,
  EmptyList,
  DegenerateP,
  InvalidDof,
  NegativeY,
  InvalidRatio,
  HeterogeneousN,
  InvalidVoterCount,
  InvalidAlpha,
  MalformedInput,
};

/// Stable machine-readable name, e.g. "RAGGED_ROWS".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace redistrict
