#pragma once

#include <rejsched/baselines/baselines.hpp>
#include <rejsched/scheduler/trace.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace rejsched {

struct DualViolation {
    JobId job = 0;
    Time t = 0;
    Rational lhs;  ///< alpha_j/p_j - beta_t
    Rational rhs;  ///< w_j (t - r_j)/p_j + w_j/2
};

/// Dual solution built from a run: alpha_j recorded at each arrival, beta_t
/// the residual weight of A's active set sampled at each integer t after
/// arrival processing. The sampled sum_t beta_t is at least the continuous
/// fractional flow of A (residuals fall inside a slot), so the certified
/// lower bound is conservative.
struct DualCertificate {
    std::vector<std::pair<JobId, Rational>> alphas;  ///< arrival order
    std::vector<std::pair<Time, Rational>> betas;    ///< non-zero samples only
    Rational speedup;                                ///< eps'
    bool feasible = true;
    std::uint64_t pairs_checked = 0;  ///< constraints evaluated explicitly
    std::uint64_t pairs_implied = 0;  ///< constraints implied by w_j (t - r_j) >= alpha_j - w_j p_j / 2
    std::vector<DualViolation> violations;  ///< first few only
    std::uint64_t violation_count = 0;
    Rational sum_alpha;
    Rational sum_beta;
    Rational objective;  ///< sum alpha - (1 + eps') sum beta
};

/// Checks alpha_j/p_j - beta_t <= w_j (t - r_j)/p_j + w_j/2 for every job
/// and every integer t in [r_j, horizon], exactly. Infeasibility is reported,
/// not thrown.
[[nodiscard]] DualCertificate verify_duals(const ScheduleTrace& trace, const Rational& speedup = Rational(0));

struct LowerBoundVerdict {
    Rational benchmark;               ///< F^O at speed 1 (+ eps')
    Rational immediate_alpha;         ///< sum over J^imm of alpha_j
    Rational kept_alpha;              ///< sum over the rest
    Rational work_over_epsilon;       ///< sum w_j p_j / eps
    Rational fractional_flow_A;
    bool opt_lower_bound = true;      ///< immediate_alpha <= benchmark + work_over_epsilon
    bool algorithm_upper_bound = true;  ///< fractional_flow_A <= kept_alpha + work_over_epsilon
    /// With eps' > 0: immediate_alpha - 2 eps' sum alpha - 2 work_over_epsilon <= benchmark.
    std::optional<bool> augmented_lower_bound;

    [[nodiscard]] bool ok() const noexcept {
        return opt_lower_bound && algorithm_upper_bound && augmented_lower_bound.value_or(true);
    }
};

/// Both flow bounds against a benchmark value already computed by the caller.
[[nodiscard]] LowerBoundVerdict lower_bound_check(const ScheduleTrace& trace, const Rational& benchmark,
                                                  const Rational& speedup = Rational(0));

/// Same, computing the benchmark with transport_opt at speed 1 + eps'.
/// Throws TooLargeForOracle when the instance exceeds `limits`.
[[nodiscard]] LowerBoundVerdict lower_bound_check(const ScheduleTrace& trace, const OracleLimits& limits,
                                                  const Rational& speedup = Rational(0));

}  // namespace rejsched
