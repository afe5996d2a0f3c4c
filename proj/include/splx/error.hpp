#pragma once

#include <stdexcept>
#include <string>

namespace splx {

enum class ErrorCode {
    // geometry
    NonPositiveComponent,
    SumOutOfTolerance,
    DimensionTooSmall,
    EmptyIndexSet,
    IndexAbsent,
    IndexOutOfRange,
    UnsupportedDimensionForRendering,
    // projection
    IncompatibleBundle,
    SingularSystem,
    IncompatiblePair,
    SameFacet,
    // set matching
    MixedDimensions,
    NoFeasibleAssignment,
    AmbiguousAssignment,
    PostMatchIncompatibility,
    // density
    DimensionMismatch,
    DepthOutOfRange,
    AccuracyTooLow,
    EvalFailure,
    OutsideFacet,
    FacetTooSmall,
    // render
    UnsupportedDimension,
    InconsistentSpec,
    // cli
    ParseError,
    ValidationError,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// All library failures are reported through this exception type; `code`
/// identifies the condition machine-readably.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace splx
