#pragma once

#include <stdexcept>
#include <string>

namespace ptune {

// Exit-code class of an error, as seen by the command line tool.
enum class ErrorClass { usage = 1, data = 2, numeric = 3 };

enum class ErrorCode {
    parse_error,
    dimension_mismatch,
    inconsistent_metric,
    disconnected,
    bad_alpha_range,
    offsets_not_decreasing,
    overflow,
    center_outside_cluster,
    k_too_large,
    missing_ground_truth,
    domain_error,
    sigma_too_large_for_exact,
    unknown_family,
    non_null_diagonal,
    class_too_large,
    invalid_argument,
};

inline const char* code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::inconsistent_metric: return "InconsistentMetric";
    case ErrorCode::disconnected: return "Disconnected";
    case ErrorCode::bad_alpha_range: return "BadAlphaRange";
    case ErrorCode::offsets_not_decreasing: return "OffsetsNotDecreasing";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::center_outside_cluster: return "CenterOutsideCluster";
    case ErrorCode::k_too_large: return "KTooLarge";
    case ErrorCode::missing_ground_truth: return "MissingGroundTruth";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::sigma_too_large_for_exact: return "SigmaTooLargeForExact";
    case ErrorCode::unknown_family: return "UnknownFamily";
    case ErrorCode::non_null_diagonal: return "NonNullDiagonal";
    case ErrorCode::class_too_large: return "ClassTooLarge";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

inline ErrorClass code_class(ErrorCode c) {
    switch (c) {
    case ErrorCode::class_too_large:
    case ErrorCode::overflow:
        return ErrorClass::numeric;
    case ErrorCode::invalid_argument:
    case ErrorCode::unknown_family:
        return ErrorClass::usage;
    default:
        return ErrorClass::data;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ptune
