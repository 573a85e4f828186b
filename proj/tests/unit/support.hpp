#pragma once

#include <rejsched/core/types.hpp>
#include <rejsched/harness/workload.hpp>

#include <vector>

namespace rejsched::testing {

inline Job job(JobId id, Time release, Rational weight, std::int64_t size) {
    return Job{id, release, std::move(weight), {size}};
}

inline Instance instance(std::vector<Job> jobs, Rational epsilon = Rational(1, 2)) {
    Instance inst;
    inst.jobs = std::move(jobs);
    inst.epsilon = std::move(epsilon);
    return validate_instance(std::move(inst));
}

// j1(r=0,w=1,p=4), j2 and j3 at r=1 with w=3/2, p=1, eps=1/2.
inline Instance worked_example() {
    return instance({job(1, 0, 1, 4), job(2, 1, Rational(3, 2), 1), job(3, 1, Rational(3, 2), 1)});
}

inline Instance random_instance(std::uint64_t seed, std::size_t n, Rational epsilon = Rational(1, 2),
                                std::int64_t max_size = 8) {
    WorkloadModel m;
    m.kind = ModelKind::PoissonPareto;
    m.n = n;
    m.seed = seed;
    m.max_size = max_size;
    m.arrival_rate = 0.6;
    m.epsilon = std::move(epsilon);
    return validate_instance(generate(m).instance);
}

}  // namespace rejsched::testing
