#include "support.hpp"

#include <rejsched/analysis/metrics.hpp>
#include <rejsched/core/error.hpp>
#include <rejsched/dispatch/dispatch.hpp>

#include <doctest.h>

using namespace rejsched;
using namespace rejsched::testing;

namespace {

Instance multi(std::vector<Job> jobs, std::size_t m, Rational eps = Rational(1, 2)) {
    Instance inst;
    inst.jobs = std::move(jobs);
    inst.machines = m;
    inst.epsilon = std::move(eps);
    return validate_instance(std::move(inst));
}

std::vector<SingleMachineScheduler> empty_machines(std::size_t m) {
    std::vector<SingleMachineScheduler> out;
    for (std::size_t i = 0; i < m; ++i) {
        out.emplace_back(i, Rational(1, 2));
    }
    return out;
}

}  // namespace

TEST_CASE("dispatch examples") {
    const auto machines = empty_machines(2);
    const Job fast{1, 0, 2, {1, 10}};
    const DispatchDecision d = dispatch(fast, machines);
    CHECK(d.machine == 0);
    CHECK(d.score == Rational(1));

    const Job only_second{2, 0, 1, {std::nullopt, 3}};
    CHECK(dispatch(only_second, machines).machine == 1);

    const Job tie{3, 0, 1, {4, 4}};
    CHECK(dispatch(tie, machines).machine == 0);

    const Job nowhere{4, 0, 1, {std::nullopt, std::nullopt}};
    CHECK_THROWS_AS((void)dispatch(nowhere, machines), Error);
}

TEST_CASE("two simultaneous jobs split across machines") {
    const MultiRun r = run_multi(multi({Job{1, 0, 1, {2, 20}}, Job{2, 0, 1, {20, 2}}}, 2));
    REQUIRE(r.traces.size() == 2);
    CHECK(r.log[0].machine == 0);
    CHECK(r.log[1].machine == 1);
    for (const ScheduleTrace& t : r.traces) {
        const Metrics m = compute_metrics(t);
        CHECK(m.completed_b == 1);
        CHECK(m.weighted_flow_B == Rational(2));
    }
}

TEST_CASE("m = 1 reduces to the single-machine run") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = random_instance(seed, 50);
        const MultiRun r = run_multi(inst);
        REQUIRE(r.traces.size() == 1);
        CHECK(same_trace(r.traces[0], run(inst)));
    }
}

TEST_CASE("jobs runnable on one machine all land there") {
    std::vector<Job> jobs;
    for (JobId i = 1; i <= 6; ++i) {
        jobs.push_back(Job{i, static_cast<Time>(i), 1, {std::nullopt, std::nullopt, 2}});
    }
    const MultiRun r = run_multi(multi(jobs, 3));
    const auto parts = partition(r, 3);
    CHECK(parts[0].empty());
    CHECK(parts[1].empty());
    CHECK(parts[2].size() == 6);
}

TEST_CASE("multi-machine runs partition the jobs and keep invariants") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        WorkloadModel m;
        m.n = 60;
        m.seed = seed;
        m.machines = 3;
        m.missing = 0.3;
        m.max_size = 8;
        m.arrival_rate = 1.5;
        const Instance inst = validate_instance(generate(m).instance);
        const MultiRun r = run_multi(inst);
        const auto parts = partition(r, inst.machines);
        std::size_t total = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            total += parts[i].size();
            CHECK(parts[i].size() == r.traces[i].jobs.size());
            CHECK(check_structure(r.traces[i]).ok());
        }
        CHECK(total == inst.jobs.size());
        for (const DispatchDecision& d : r.log) {
            const auto it = std::find_if(inst.jobs.begin(), inst.jobs.end(), [&](const Job& j) { return j.id == d.job; });
            CHECK(it->runnable_on(d.machine));
        }

        // A decision depends only on the arrivals up to r_j: replaying a prefix
        // reproduces the same prefix of decisions.
        Instance prefix = inst;
        prefix.jobs.resize(inst.jobs.size() / 2);
        const MultiRun rp = run_multi(prefix);
        for (std::size_t i = 0; i < rp.log.size(); ++i) {
            CHECK(rp.log[i].machine == r.log[i].machine);
            CHECK(rp.log[i].score == r.log[i].score);
        }
    }
}
