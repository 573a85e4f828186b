#pragma once

#include <rejsched/core/types.hpp>

#include <span>

namespace rejsched {

/// Impact of one arrival on the active set, split by density class.
///
/// alpha = alpha_plus + self_term + alpha_minus holds exactly. alpha_plus
/// collects the terms of jobs whose density class is at least the arriving
/// job's, alpha_minus the terms of strictly lower classes.
struct AlphaBreakdown {
    Rational alpha;
    Rational alpha_plus;
    Rational alpha_minus;
    Rational self_term;  ///< w_j p_j / 2
    int density_class = 0;
    bool in_j_plus = false;   ///< alpha_plus >= w_j p_j / eps
    bool in_j_minus = false;  ///< alpha_minus > w_j p_j / eps

    friend bool operator==(const AlphaBreakdown&, const AlphaBreakdown&) = default;
};

/// Largest integer i with 2^i <= x. Exact; throws NonPositiveArgument for x <= 0.
[[nodiscard]] int floor_log(const Rational& x);

/// floor_log(w_j / p_ij). Throws JobNotRunnableOnMachine.
[[nodiscard]] int density_class(const Job& job, MachineIndex machine);

/// Increase in total fractional weighted flow time caused by `job` if
/// preemptive HDF ran on `active` plus `job` with no further arrivals.
///
/// `active` follows the A(r_j) convention: same-time arrivals processed
/// earlier are included, `job` itself is not (JobInActiveSet otherwise).
[[nodiscard]] AlphaBreakdown compute_alpha(const Job& job, MachineIndex machine,
                                           std::span<const ResidualJob> active, const Rational& epsilon);

}  // namespace rejsched
