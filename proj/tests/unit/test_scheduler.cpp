#include "support.hpp"

#include <rejsched/analysis/metrics.hpp>
#include <rejsched/core/error.hpp>
#include <rejsched/scheduler/single_machine.hpp>

#include <doctest.h>

using namespace rejsched;
using namespace rejsched::testing;

namespace {

std::vector<std::optional<JobId>> a_slots(const ScheduleTrace& t) {
    std::vector<std::optional<JobId>> out;
    for (const SlotRecord& s : t.slots) {
        out.push_back(s.a_runs);
    }
    return out;
}

std::vector<std::optional<JobId>> b_slots(const ScheduleTrace& t) {
    std::vector<std::optional<JobId>> out;
    for (const SlotRecord& s : t.slots) {
        out.push_back(s.b_runs);
    }
    return out;
}

}  // namespace

TEST_CASE("first arrival is activated without phi") {
    SingleMachineScheduler s(0, Rational(1, 2));
    const Job j = job(1, 0, 1, 3);
    CHECK(s.on_arrival(j) == ArrivalOutcome::Activated);
    CHECK(s.active().size() == 1);
    CHECK_FALSE(s.trace().jobs.front().phi);
}

TEST_CASE("promotion fires mid-batch") {
    SingleMachineScheduler s(0, Rational(1, 2));
    const Job j1 = job(1, 0, 1, 10);
    const Job j2 = job(2, 1, Rational(3, 2), 1);
    const Job j3 = job(3, 1, Rational(3, 2), 1);
    s.on_arrival(j1);
    CHECK(s.select_slot() == JobId{1});
    s.on_arrival(j2);
    CHECK(s.arrivals_since_start() == Rational(3, 2));
    CHECK(s.l_set().empty());
    CHECK(s.trace().jobs[1].phi == JobId{1});
    s.on_arrival(j3);
    CHECK(s.l_set().count(1) == 1);
    CHECK(s.trace().jobs[2].phi == JobId{1});
    CHECK(s.trace().jobs[0].promoted_at == Time{1});
    CHECK(s.trace().departure.at(1) == 1);
}

TEST_CASE("first job of a fresh T+ bucket is rejected on arrival") {
    SingleMachineScheduler s(0, Rational(1, 2));
    const Job j1 = job(1, 0, 4, 4);
    const Job j2 = job(2, 1, 1, 1);
    s.on_arrival(j1);
    (void)s.select_slot();
    CHECK(s.on_arrival(j2) == ArrivalOutcome::Rejected);
    const JobRecord& r = s.trace().jobs[1];
    CHECK(r.alpha.alpha_plus == Rational(3));
    CHECK(r.decision.reason == RejectReason::PlusFirst);
    CHECK(r.departure == Time{1});
    CHECK(s.active().size() == 1);
}

TEST_CASE("promotion threshold is strict") {
    const Job j1 = job(1, 0, 1, 10);
    {
        SingleMachineScheduler s(0, Rational(1, 2));
        const Job j2 = job(2, 1, 2, 1);
        s.on_arrival(j1);
        (void)s.select_slot();
        s.on_arrival(j2);
        CHECK(s.l_set().empty());
        CHECK_FALSE(s.promote_check());
    }
    {
        SingleMachineScheduler s(0, Rational(1, 2));
        const Job j2 = job(2, 1, Rational(2001, 1000), 1);
        s.on_arrival(j1);
        (void)s.select_slot();
        s.on_arrival(j2);
        CHECK(s.l_set().count(1) == 1);
    }
    SingleMachineScheduler idle(0, Rational(1, 2));
    CHECK_FALSE(idle.promote_check());
}

TEST_CASE("select_slot keeps a non-L job running") {
    SingleMachineScheduler s(0, Rational(1, 2));
    const Job j1 = job(1, 0, 1, 3);
    const Job dense = job(2, 1, 1, 1);
    s.on_arrival(j1);
    CHECK(s.select_slot() == JobId{1});
    s.on_arrival(dense);
    CHECK(s.select_slot() == JobId{1});
    CHECK(s.select_slot() == JobId{1});
    CHECK(s.select_slot() == JobId{2});
    CHECK_FALSE(s.select_slot());
    CHECK(s.active().empty());
}

TEST_CASE("worked run with eps = 1/2") {
    const ScheduleTrace t = run(worked_example());
    using O = std::optional<JobId>;
    CHECK(a_slots(t) == std::vector<O>{1, 2, 3, 1, 1, 1});
    CHECK(b_slots(t) == std::vector<O>{1, 2, 3, std::nullopt, std::nullopt, std::nullopt});
    CHECK_FALSE(t.slots[0].b_idles);
    CHECK(t.slots[3].b_idles);
    CHECK(t.job(1).promoted_at == Time{1});
    CHECK(t.job(1).departure == Time{1});
    CHECK(t.job(1).completed_a == Time{6});
    CHECK_FALSE(t.job(1).completed_b);
    CHECK(t.job(2).completed_b == Time{2});
    CHECK(t.job(3).completed_b == Time{3});
    CHECK(t.complete);
    CHECK(check_structure(t).ok());

    std::vector<EventKind> kinds;
    for (const TraceEvent& e : t.events) {
        kinds.push_back(e.kind);
    }
    CHECK(kinds == std::vector<EventKind>{EventKind::PromoteToL, EventKind::DelayedRejectB, EventKind::CompleteA,
                                          EventKind::CompleteB, EventKind::CompleteA, EventKind::CompleteB,
                                          EventKind::CompleteA});
}

TEST_CASE("single job runs identically in A and B") {
    const ScheduleTrace t = run(instance({job(1, 0, 1, 3)}));
    CHECK(a_slots(t) == b_slots(t));
    CHECK(t.job(1).completed_b == Time{3});
    CHECK(t.job(1).departure == Time{3});
    CHECK(compute_metrics(t).rejected_weight_delayed == Rational(0));
}

TEST_CASE("equal densities run in id order") {
    const ScheduleTrace t = run(instance({job(7, 0, 1, 2), job(3, 0, 1, 2)}));
    using O = std::optional<JobId>;
    CHECK(a_slots(t) == std::vector<O>{3, 3, 7, 7});
}

TEST_CASE("arrivals in the past are refused") {
    SingleMachineScheduler s(0, Rational(1, 2));
    const Job j1 = job(1, 0, 1, 3);
    const Job late = job(2, 0, 1, 1);
    s.on_arrival(j1);
    (void)s.select_slot();
    CHECK_THROWS_AS(s.on_arrival(late), Error);
}

TEST_CASE("advance_to skips idle time") {
    SingleMachineScheduler s(0, Rational(1, 2));
    const Job j1 = job(1, 0, 1, 2);
    const Job j2 = job(2, 1000000, 1, 1);
    s.on_arrival(j1);
    s.on_arrival(j2);
    s.drain();
    const ScheduleTrace t = s.finish();
    CHECK(t.slots.size() == 3);
    CHECK(t.job(2).completed_b == Time{1000001});
}

TEST_CASE("scheduler invariants on random instances") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const Rational eps = seed % 3 == 0 ? Rational(1, 10) : (seed % 3 == 1 ? Rational(1, 2) : Rational(1, 4));
        const Instance inst = random_instance(seed, 60, eps, 12);
        const ScheduleTrace t = run(inst);
        CAPTURE(seed);
        const StructuralReport rep = check_structure(t);
        CHECK(rep.ok());
        for (const std::string& v : rep.violations) {
            MESSAGE(v);
        }

        Rational total, promoted;
        for (const JobRecord& r : t.jobs) {
            total += r.weight;
            if (r.promoted_at) promoted += r.weight;
            CHECK(r.alpha.alpha == r.alpha.alpha_plus + r.alpha.self_term + r.alpha.alpha_minus);
            if (r.immediately_rejected()) {
                CHECK(r.departure == r.release);
                CHECK_FALSE(r.first_start);
            }
        }
        CHECK(promoted <= eps * total);
        CHECK(t.complete);
        CHECK(same_trace(t, run(inst)));
    }
}
