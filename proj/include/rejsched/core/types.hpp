#pragma once

#include <rejsched/core/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rejsched {

using JobId = std::uint64_t;
using Time = std::int64_t;
using MachineIndex = std::size_t;

/// A unit of work: release time r_j, weight w_j and per-machine sizes p_ij.
/// An absent size means the machine cannot run the job.
struct Job {
    JobId id = 0;
    Time release = 0;
    Rational weight{1};
    std::vector<std::optional<std::int64_t>> sizes;

    [[nodiscard]] bool runnable_on(MachineIndex machine) const noexcept {
        return machine < sizes.size() && sizes[machine].has_value();
    }
    /// Throws Error(JobNotRunnableOnMachine) when no size is present.
    [[nodiscard]] std::int64_t size_on(MachineIndex machine) const;
    /// rho_ij = w_j / p_ij.
    [[nodiscard]] Rational density(MachineIndex machine) const;

    friend bool operator==(const Job&, const Job&) = default;
};

struct Instance {
    std::vector<Job> jobs;
    std::size_t machines = 1;
    Rational epsilon{1, 2};
    /// eps' >= 0: speed 1 + eps' granted to the offline benchmark only.
    Rational speedup{0};

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// An active job as seen by one machine: p_j(t) remaining out of size p_j.
/// The density is fixed per (job, machine); the residual weight
/// w_j(t) = rho_j * p_j(t) is always recomputed from the remaining time.
struct ResidualJob {
    const Job* job = nullptr;
    std::int64_t size = 0;
    Rational density;
    Rational remaining;

    /// Full residual for `job` on `machine`. `job` must outlive the result.
    static ResidualJob fresh(const Job& job, MachineIndex machine);

    [[nodiscard]] JobId id() const noexcept { return job->id; }
    [[nodiscard]] Rational residual_weight() const { return density * remaining; }
};

/// Returns k = 1/eps, throwing NonIntegralEpsilonReciprocal unless eps = 1/k
/// for a positive integer k.
[[nodiscard]] std::int64_t epsilon_reciprocal(const Rational& epsilon);

/// Checks every invariant of Instance and Job and returns the instance with
/// jobs stably sorted by release.
///
/// Errors: NonIntegralEpsilonReciprocal, EpsilonTooLarge (eps^2 > 1/2),
/// DuplicateJobId, NonPositiveSizeOrWeight, MachineCountMismatch (size list
/// length differs from m), NoEligibleMachine (no size present), NegativeSpeedup.
[[nodiscard]] Instance validate_instance(Instance raw);

}  // namespace rejsched
