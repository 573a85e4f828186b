#include <rejsched/core/error.hpp>
#include <rejsched/dispatch/dispatch.hpp>

namespace rejsched {

DispatchDecision dispatch(const Job& job, std::span<const SingleMachineScheduler> machines) {
    std::optional<DispatchDecision> best;
    for (std::size_t i = 0; i < machines.size(); ++i) {
        if (!job.runnable_on(machines[i].machine())) {
            continue;
        }
        Rational score = machines[i].preview_alpha(job).alpha;
        if (!best || score < best->score) {
            best = DispatchDecision{job.id, i, std::move(score)};
        }
    }
    if (!best) {
        throw Error(ErrorCode::NoEligibleMachine, "job " + std::to_string(job.id));
    }
    return *best;
}

MultiRun run_multi(const Instance& instance) {
    std::vector<SingleMachineScheduler> machines;
    machines.reserve(instance.machines);
    for (MachineIndex i = 0; i < instance.machines; ++i) {
        machines.emplace_back(i, instance.epsilon);
    }

    MultiRun out;
    out.log.reserve(instance.jobs.size());
    for (const Job& job : instance.jobs) {
        // No machine's clock may pass an undelivered arrival.
        for (auto& m : machines) {
            m.advance_to(job.release);
        }
        DispatchDecision d = dispatch(job, machines);
        machines[d.machine].on_arrival(job);
        out.log.push_back(std::move(d));
    }
    out.traces.reserve(machines.size());
    for (auto& m : machines) {
        m.drain();
        out.traces.push_back(m.finish());
    }
    return out;
}

std::vector<std::vector<JobId>> partition(const MultiRun& run, std::size_t machines) {
    std::vector<std::vector<JobId>> out(machines);
    for (const DispatchDecision& d : run.log) {
        out.at(d.machine).push_back(d.job);
    }
    return out;
}

}  // namespace rejsched
