#pragma once

#include <rejsched/baselines/baselines.hpp>
#include <rejsched/scheduler/trace.hpp>

#include <string>
#include <unordered_map>
#include <vector>

namespace rejsched {

/// Flow aggregates of one machine's run.
///
/// fractional_flow_A integrates residual weight continuously, so a job run
/// without interruption from s has fractional flow w(s - r) + w p / 2.
/// The integral flows use completion times in B.
struct Metrics {
    Rational weighted_flow_B;      ///< sum w_j (C_j - r_j) over jobs B completes
    Rational fractional_flow_A;    ///< continuous, over every job A processes
    Rational departure_objective;  ///< sum w_j (D_j - r_j) over all jobs
    Rational rejected_weight_immediate;
    Rational rejected_weight_delayed;
    Rational total_weight;
    std::size_t jobs = 0;
    std::size_t completed_b = 0;
    std::size_t immediate_rejections = 0;
    std::size_t delayed_rejections = 0;
};

/// Throws IncompleteTrace if some job has no departure.
[[nodiscard]] Metrics compute_metrics(const ScheduleTrace& trace);

/// Slots in which A ran each job, increasing.
[[nodiscard]] std::unordered_map<JobId, std::vector<Time>> runs_by_job(const ScheduleTrace& trace);

/// Continuous fractional flow of `job` in A accrued over [r_j, until).
[[nodiscard]] Rational accrued_fractional_flow(const JobRecord& job, std::span<const Time> runs, Time until);

/// The machine's input stream as offline jobs (sizes on this machine).
[[nodiscard]] std::vector<OfflineJob> offline_jobs(const ScheduleTrace& trace);

/// Outcome of the per-trace structural invariants. Each entry of
/// `violations` names the invariant and the offending job or slot.
struct StructuralReport {
    bool b_never_preempts = true;
    bool mirror = true;
    bool one_terminal_event = true;
    bool phi_load = true;
    bool completion_identities = true;  ///< fractional = w(s-r)+wp/2, integral = w(s-r)+wp <= 2 x fractional
    bool rejection_lower_bound = true;  ///< accrued fractional flow at l_j >= w (l_j - r_j) / 2
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const noexcept {
        return b_never_preempts && mirror && one_terminal_event && phi_load && completion_identities &&
               rejection_lower_bound;
    }
};

[[nodiscard]] StructuralReport check_structure(const ScheduleTrace& trace);

}  // namespace rejsched
