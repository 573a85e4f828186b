#pragma once

#include <rejsched/core/rational.hpp>

#include <iosfwd>
#include <string_view>

namespace rejsched {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitUsage = 2 };

/// "1+1/4", "5/4" or "2": a sum of rationals. Throws BadParameters.
[[nodiscard]] Rational parse_speed(std::string_view text);

/// Entry point of the `rejsched` tool. Records go to `out` (or --out),
/// diagnostics to `err`.
///
///   simulate --trace F [--epsilon 1/k] [--machines m] [--summary-only]
///   baseline --trace F [--speed 1+1/k] [--horizon H] [--machine i]
///   verify   --trace F [--epsilon 1/k] [--speedup 1/k']
///   audit    --trace F [--epsilon 1/k]
///   gen      --model poisson_pareto|uniform|adversarial_L|fixed --out F [...]
///   report   FILES...
///
/// REJSCHED_EPSILON and REJSCHED_HORIZON supply defaults that a flag
/// overrides; the epsilon in the trace header is used when neither is set.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rejsched
