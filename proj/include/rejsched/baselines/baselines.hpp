#pragma once

#include <rejsched/core/types.hpp>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rejsched {

/// A job as seen by an offline single-machine benchmark.
struct OfflineJob {
    JobId id = 0;
    Time release = 0;
    Rational weight{1};
    std::int64_t size = 1;

    [[nodiscard]] Rational density() const { return weight / Rational(size); }
};

/// All jobs of the instance with their sizes on `machine`; JobNotRunnableOnMachine
/// if one cannot run there.
[[nodiscard]] std::vector<OfflineJob> offline_jobs(const Instance& instance, MachineIndex machine);
/// Only the listed ids (e.g. the stream dispatched to `machine`).
[[nodiscard]] std::vector<OfflineJob> offline_jobs(const Instance& instance, MachineIndex machine,
                                                   std::span<const JobId> ids);

struct SlotAllocation {
    Time t = 0;
    std::vector<std::pair<JobId, Rational>> amounts;  ///< x_{t,j} > 0
};

/// x_{t,j}: amount of job j processed in slot [t, t+1), at most `speed` per slot.
struct FractionalSchedule {
    Rational speed{1};
    std::vector<OfflineJob> jobs;
    std::vector<SlotAllocation> slots;  ///< increasing t, non-empty slots only
};

/// Preemptive HDF at the given speed (>= 1), splitting jobs within a slot.
/// Ties: earlier release, then smaller id.
[[nodiscard]] FractionalSchedule preemptive_hdf(std::span<const OfflineJob> jobs, const Rational& speed);

/// sum_{t,j} w_j ((t - r_j)/p_j + 1/2) x_{t,j}, exact.
[[nodiscard]] Rational lp_cost(const FractionalSchedule& schedule);

/// max release + ceil(sum p / speed) + 1; always feasible.
[[nodiscard]] Time default_horizon(std::span<const OfflineJob> jobs, const Rational& speed);

/// Exact optimum of the time-indexed LP over slots [min release, horizon)
/// with per-slot capacity `speed`, solved as a min-cost transportation
/// problem (successive shortest paths, exact rational costs). Independent of
/// the HDF code path. Throws HorizonTooShort when the demands do not fit.
[[nodiscard]] Rational transport_opt(std::span<const OfflineJob> jobs, const Rational& speed,
                                     std::optional<Time> horizon = std::nullopt);

/// Minimum sum w_j (C_j - r_j) over all non-preemptive schedules that
/// finish every job. At most 6 jobs (TooLarge otherwise).
[[nodiscard]] Rational brute_force_nonpreemptive(std::span<const OfflineJob> jobs);

/// No-rejection non-preemptive greedy: whenever the machine is idle, start
/// the densest released job and run it to completion. Returns sum w_j (C_j - r_j).
[[nodiscard]] Rational greedy_nonpreemptive_flow(std::span<const OfflineJob> jobs);

/// Size limits under which transport_opt is used as the benchmark.
struct OracleLimits {
    std::size_t max_jobs = 24;
    std::int64_t max_cells = 6000;  ///< jobs x slots
};

[[nodiscard]] bool oracle_fits(std::span<const OfflineJob> jobs, const Rational& speed,
                               const OracleLimits& limits = {});

enum class BenchmarkMethod { Transport, HdfLp };

struct Benchmark {
    Rational value;
    BenchmarkMethod method = BenchmarkMethod::Transport;
};

/// The fractional offline optimum F^O at `speed`: transport_opt when the
/// instance fits the oracle limits, else lp_cost(preemptive_hdf) (equal to
/// it; the acceptance suite checks the equality exhaustively on tiny inputs).
[[nodiscard]] Benchmark offline_benchmark(std::span<const OfflineJob> jobs, const Rational& speed,
                                          const OracleLimits& limits = {});

}  // namespace rejsched
