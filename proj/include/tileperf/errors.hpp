#pragma once

#include <stdexcept>
#include <string>

namespace tileperf {

// Stable error codes; the CLI maps them straight to process exit codes.
enum class ErrorCode : int {
    Usage = 2,
    // profile / params documents
    MissingField = 10,
    NonPositiveValue = 11,
    InconsistentTotals = 12,
    // occupancy
    BlockTooLarge = 13,
    ZeroResidency = 14,
    OutOfRange = 15,
    // interpolation / tiling
    NonPositiveScale = 16,
    EmptyOutput = 17,
    InvalidTile = 18,
    ThreadIdOutOfBlock = 19,
    // cost model / bench
    NoValidCandidate = 20,
    MissingImage = 21,
    // image files
    UnsupportedFormat = 22,
    MalformedHeader = 23,
    TruncatedPayload = 24,
    UnsupportedMaxval = 25,
    IoFailure = 26,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }
    int exit_code() const { return static_cast<int>(code_); }

private:
    ErrorCode code_;
};

#define TILEPERF_ERROR_TYPE(Name)                                                  \
    struct Name final : Error {                                                    \
        explicit Name(const std::string& msg) : Error(ErrorCode::Name, msg) {}     \
    }

TILEPERF_ERROR_TYPE(MissingField);
TILEPERF_ERROR_TYPE(NonPositiveValue);
TILEPERF_ERROR_TYPE(InconsistentTotals);
TILEPERF_ERROR_TYPE(OutOfRange);
TILEPERF_ERROR_TYPE(NonPositiveScale);
TILEPERF_ERROR_TYPE(EmptyOutput);
TILEPERF_ERROR_TYPE(InvalidTile);
TILEPERF_ERROR_TYPE(ThreadIdOutOfBlock);
TILEPERF_ERROR_TYPE(NoValidCandidate);
TILEPERF_ERROR_TYPE(MissingImage);
TILEPERF_ERROR_TYPE(UnsupportedFormat);
TILEPERF_ERROR_TYPE(MalformedHeader);
TILEPERF_ERROR_TYPE(TruncatedPayload);
TILEPERF_ERROR_TYPE(UnsupportedMaxval);
TILEPERF_ERROR_TYPE(IoFailure);

#undef TILEPERF_ERROR_TYPE

struct UsageError final : Error {
    explicit UsageError(const std::string& msg) : Error(ErrorCode::Usage, msg) {}
};

}  // namespace tileperf
