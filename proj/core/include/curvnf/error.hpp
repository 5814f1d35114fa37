#pragma once

#include <stdexcept>
#include <string>

namespace curvnf {

enum class ErrorCode {
  kDimension,
  kDegenerateMetric,
  kNonUnitVector,
  kNotComplexLinear,
  kSymmetryViolation,
  kBianchiViolation,
  kPrecondition,
  kFrameReconstruction,
  kFlatTensor,
  kNonOrthogonalFrame,
  kLightlikePlane,
  kDegeneratePlane,
  kBianchiProjection,
  kUnknownBlock,
  kMissingWeight,
  kInvalidGrid,
  kFormat,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvnf
