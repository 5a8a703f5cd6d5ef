#pragma once

#include <stdexcept>
#include <string>

namespace ultrawave {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    DuplicateId,
    CycleDetected,
    Disconnected,
    BranchingIndexOne,
    RootDegenerate,
    UnknownVertex,
    NotComparable,
    NotStrictAncestor,
    MissingLeafMass,
    NonPositiveMass,
    NotInternalVertex,
    NotMonotone,
    DimensionMismatch,
    MissingKernel,
    TooLarge,
    Io,
};

const char* error_code_name(ErrorCode code);

/// The single exception type thrown by the library. Carries a machine
/// readable code plus a human readable detail message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace ultrawave
