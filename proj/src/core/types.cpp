#include <rejsched/core/error.hpp>
#include <rejsched/core/types.hpp>

#include <algorithm>
#include <unordered_set>

namespace rejsched {

std::int64_t Job::size_on(MachineIndex machine) const {
    if (!runnable_on(machine)) {
        throw Error(ErrorCode::JobNotRunnableOnMachine,
                    "job " + std::to_string(id) + " on machine " + std::to_string(machine));
    }
    return *sizes[machine];
}

Rational Job::density(MachineIndex machine) const {
    return weight / Rational(size_on(machine));
}

ResidualJob ResidualJob::fresh(const Job& job, MachineIndex machine) {
    const std::int64_t size = job.size_on(machine);
    return ResidualJob{&job, size, job.weight / Rational(size), Rational(size)};
}

std::int64_t epsilon_reciprocal(const Rational& epsilon) {
    if (epsilon.sign() <= 0) {
        throw Error(ErrorCode::NonIntegralEpsilonReciprocal, "epsilon must be positive, got " + epsilon.str());
    }
    const Rational k = Rational(1) / epsilon;
    if (!k.is_integer()) {
        throw Error(ErrorCode::NonIntegralEpsilonReciprocal, "1/epsilon = " + k.str());
    }
    return k.floor();
}

Instance validate_instance(Instance raw) {
    if (raw.machines == 0) {
        throw Error(ErrorCode::MachineCountMismatch, "machine count must be positive");
    }
    (void)epsilon_reciprocal(raw.epsilon);
    if (raw.epsilon * raw.epsilon > Rational(1, 2)) {
        throw Error(ErrorCode::EpsilonTooLarge, "epsilon^2 > 1/2 for epsilon = " + raw.epsilon.str());
    }
    if (raw.speedup.sign() < 0) {
        throw Error(ErrorCode::NegativeSpeedup, raw.speedup.str());
    }

    std::unordered_set<JobId> seen;
    for (const Job& job : raw.jobs) {
        const std::string tag = "job " + std::to_string(job.id);
        if (!seen.insert(job.id).second) {
            throw Error(ErrorCode::DuplicateJobId, tag);
        }
        if (job.sizes.size() != raw.machines) {
            throw Error(ErrorCode::MachineCountMismatch,
                        tag + " has " + std::to_string(job.sizes.size()) + " sizes for m = " +
                            std::to_string(raw.machines));
        }
        if (job.weight.sign() <= 0) {
            throw Error(ErrorCode::NonPositiveSizeOrWeight, tag + " weight " + job.weight.str());
        }
        if (job.release < 0) {
            throw Error(ErrorCode::NonPositiveSizeOrWeight, tag + " has negative release");
        }
        bool any = false;
        for (const auto& size : job.sizes) {
            if (size) {
                if (*size < 1) {
                    throw Error(ErrorCode::NonPositiveSizeOrWeight, tag + " size " + std::to_string(*size));
                }
                any = true;
            }
        }
        if (!any) {
            throw Error(ErrorCode::NoEligibleMachine, tag + " cannot run on any machine");
        }
    }

    std::stable_sort(raw.jobs.begin(), raw.jobs.end(),
                     [](const Job& a, const Job& b) { return a.release < b.release; });
    return raw;
}

}  // namespace rejsched
