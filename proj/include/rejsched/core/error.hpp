#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rejsched {

enum class ErrorCode {
    // core
    NonIntegralEpsilonReciprocal,
    EpsilonTooLarge,
    DuplicateJobId,
    NonPositiveSizeOrWeight,
    MachineCountMismatch,
    NegativeSpeedup,
    // alpha
    NonPositiveArgument,
    JobNotRunnableOnMachine,
    JobInActiveSet,
    // rejection
    DuplicateAdmission,
    // scheduler
    ArrivalInPast,
    // dispatch
    NoEligibleMachine,
    // baselines
    HorizonTooShort,
    TooLarge,
    // analysis
    IncompleteTrace,
    TooLargeForOracle,
    // harness
    BadParameters,
    MalformedLine,
    MissingHeader,
    IOFailure,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable code. Parse errors also carry the
/// 1-based line number of the offending record.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail, std::optional<std::size_t> line = std::nullopt);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::optional<std::size_t> line() const noexcept { return line_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> line_;
};

}  // namespace rejsched
