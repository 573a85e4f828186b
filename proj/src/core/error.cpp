#include <rejsched/core/error.hpp>

namespace rejsched {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonIntegralEpsilonReciprocal: return "NonIntegralEpsilonReciprocal";
        case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
        case ErrorCode::DuplicateJobId: return "DuplicateJobId";
        case ErrorCode::NonPositiveSizeOrWeight: return "NonPositiveSizeOrWeight";
        case ErrorCode::MachineCountMismatch: return "MachineCountMismatch";
        case ErrorCode::NegativeSpeedup: return "NegativeSpeedup";
        case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
        case ErrorCode::JobNotRunnableOnMachine: return "JobNotRunnableOnMachine";
        case ErrorCode::JobInActiveSet: return "JobInActiveSet";
        case ErrorCode::DuplicateAdmission: return "DuplicateAdmission";
        case ErrorCode::ArrivalInPast: return "ArrivalInPast";
        case ErrorCode::NoEligibleMachine: return "NoEligibleMachine";
        case ErrorCode::HorizonTooShort: return "HorizonTooShort";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::IncompleteTrace: return "IncompleteTrace";
        case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::MissingHeader: return "MissingHeader";
        case ErrorCode::IOFailure: return "IOFailure";
    }
    return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail, std::optional<std::size_t> line) {
    std::string msg(to_string(code));
    if (line) {
        msg += " (line " + std::to_string(*line) + ")";
    }
    if (!detail.empty()) {
        msg += ": " + detail;
    }
    return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail, std::optional<std::size_t> line)
    : std::runtime_error(format_message(code, detail, line)), code_(code), line_(line) {}

}  // namespace rejsched
