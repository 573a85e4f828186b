#pragma once

#include <rejsched/alpha/alpha.hpp>
#include <rejsched/rejection/tables.hpp>

#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace rejsched {

enum class EventKind { ImmediateReject, PromoteToL, CompleteA, CompleteB, DelayedRejectB };

[[nodiscard]] std::string_view to_string(EventKind kind) noexcept;

/// One busy slot [t, t+1) of algorithm A and its mirror in B.
///
/// `beta` is the total residual weight of A's active set at t, sampled after
/// the arrivals at t were processed. Slots in which A's active set is empty
/// are not recorded (their beta is zero).
struct SlotRecord {
    Time t = 0;
    std::optional<JobId> a_runs;
    std::optional<JobId> b_runs;
    bool b_idles = false;
    Rational beta;
};

struct TraceEvent {
    Time time = 0;
    JobId job = 0;
    EventKind kind = EventKind::CompleteA;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Everything the scheduler decided about one arrival.
struct JobRecord {
    JobId id = 0;
    Time release = 0;
    Rational weight;
    std::int64_t size = 0;  ///< p_j on this machine
    AlphaBreakdown alpha;
    ImmediateDecision decision;
    std::optional<JobId> phi;
    std::optional<Time> first_start;  ///< s_j in A
    std::optional<Time> promoted_at;  ///< l_j
    std::optional<Time> completed_a;
    std::optional<Time> completed_b;
    std::optional<Time> departure;  ///< D_j in B

    [[nodiscard]] bool immediately_rejected() const noexcept { return decision.reject; }
    [[nodiscard]] Rational density() const { return weight / Rational(size); }
};

/// Per-machine record of both A's and B's behaviour.
struct ScheduleTrace {
    MachineIndex machine = 0;
    Rational epsilon;
    std::vector<SlotRecord> slots;   ///< increasing t
    std::vector<TraceEvent> events;  ///< in occurrence order
    std::map<JobId, Time> departure;
    std::vector<JobRecord> jobs;  ///< arrival order
    std::vector<BucketReport> tables;
    bool complete = false;

    /// Throws std::out_of_range for unknown ids.
    [[nodiscard]] const JobRecord& job(JobId id) const;
    /// Last slot end, or 0 for an empty trace.
    [[nodiscard]] Time horizon() const noexcept { return slots.empty() ? 0 : slots.back().t + 1; }
};

/// Bitwise-style equality used by the m = 1 reduction checks.
[[nodiscard]] bool same_trace(const ScheduleTrace& a, const ScheduleTrace& b);

}  // namespace rejsched
