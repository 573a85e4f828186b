#pragma once

#include <rejsched/scheduler/trace.hpp>

#include <set>
#include <span>
#include <unordered_map>

namespace rejsched {

enum class ArrivalOutcome { Rejected, Activated };

/// Online engine for one machine: algorithm A (immediate rejection, L-set
/// promotion, non-preemptive HDF with preemptible L-jobs) and its mirror B
/// (idles where A runs an L-job, rejects a job when it is promoted).
///
/// Time advances in unit slots. At each integer t the arrivals are handled
/// one by one (alpha, table admission, promotion check), then one slot
/// [t, t+1) is executed. Jobs passed to on_arrival must outlive the scheduler.
class SingleMachineScheduler {
public:
    SingleMachineScheduler(MachineIndex machine, const Rational& epsilon);

    /// Steps 1-2 for one arrival. Advances the clock to r_j first if needed;
    /// throws ArrivalInPast when r_j < clock().
    ArrivalOutcome on_arrival(const Job& job);

    /// Promotes the running non-L job if the weight released since it started
    /// exceeds w_j / eps. Returns the promoted job.
    std::optional<JobId> promote_check();

    /// Step 3: picks and executes the job for slot [clock, clock+1), then
    /// advances the clock by one. Returns the job A ran, if any.
    std::optional<JobId> select_slot();

    /// Executes slots until clock() == t (idle stretches are skipped).
    void advance_to(Time t);

    /// Executes slots until the active set is empty.
    void drain();

    /// Alpha of `job` against the current active set, without side effects.
    [[nodiscard]] AlphaBreakdown preview_alpha(const Job& job) const;

    [[nodiscard]] Time clock() const noexcept { return clock_; }
    [[nodiscard]] std::span<const ResidualJob> active() const noexcept { return active_; }
    [[nodiscard]] const std::set<JobId>& l_set() const noexcept { return l_set_; }
    [[nodiscard]] std::optional<JobId> running() const noexcept;
    [[nodiscard]] const Rational& arrivals_since_start() const noexcept { return arrivals_since_start_; }
    [[nodiscard]] MachineIndex machine() const noexcept { return machine_; }
    [[nodiscard]] const Rational& epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] const RejectionTables& tables() const noexcept { return tables_; }
    [[nodiscard]] const ScheduleTrace& trace() const noexcept { return trace_; }

    /// Snapshot of the trace with the table audit attached. `complete` is set
    /// once the active set is empty.
    [[nodiscard]] ScheduleTrace finish() const;

private:
    struct Run {
        JobId job;
        Time start;
    };

    JobRecord& record(JobId id);
    [[nodiscard]] std::size_t pick_hdf() const;
    void complete(std::size_t index);

    MachineIndex machine_;
    Rational epsilon_;
    RejectionTables tables_;
    Time clock_ = 0;
    std::vector<ResidualJob> active_;
    std::set<JobId> l_set_;
    std::optional<Run> running_;
    Rational arrivals_since_start_;
    ScheduleTrace trace_;
    std::unordered_map<JobId, std::size_t> record_index_;
};

/// Runs the whole instance on one machine (all jobs must be runnable there).
[[nodiscard]] ScheduleTrace run(const Instance& instance, MachineIndex machine = 0);

}  // namespace rejsched
