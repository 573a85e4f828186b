#pragma once

#include <rejsched/scheduler/single_machine.hpp>

#include <vector>

namespace rejsched {

struct DispatchDecision {
    JobId job = 0;
    MachineIndex machine = 0;
    /// Alpha the job incurs on the chosen machine at its release.
    Rational score;
};

/// Greedy immediate dispatch: the eligible machine with the smallest alpha
/// against its current active set, ties to the smaller index. Every
/// scheduler must already be advanced to r_j. Throws NoEligibleMachine.
[[nodiscard]] DispatchDecision dispatch(const Job& job, std::span<const SingleMachineScheduler> machines);

struct MultiRun {
    std::vector<ScheduleTrace> traces;  ///< one per machine
    std::vector<DispatchDecision> log;  ///< arrival order
};

/// Dispatches every arrival irrevocably and runs an independent
/// single-machine scheduler (with its own tables) per machine.
[[nodiscard]] MultiRun run_multi(const Instance& instance);

/// Jobs delivered to each machine, in arrival order: the J^(i) streams.
[[nodiscard]] std::vector<std::vector<JobId>> partition(const MultiRun& run, std::size_t machines);

}  // namespace rejsched
