#pragma once

#include <rejsched/alpha/alpha.hpp>
#include <rejsched/core/types.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace rejsched {

/// T+ bucket index (floor_log(alpha+ / w), floor_log(w)).
struct PlusBucketKey {
    int kappa = 0;
    int lambda = 0;
    friend auto operator<=>(const PlusBucketKey&, const PlusBucketKey&) = default;
};

/// T- bucket index (floor_log(alpha-), floor_log(rho), floor_log(p)).
struct MinusBucketKey {
    int gamma = 0;
    int delta = 0;
    int eta = 0;
    friend auto operator<=>(const MinusBucketKey&, const MinusBucketKey&) = default;
};

struct BucketCounter {
    std::uint64_t count = 0;
};

enum class RejectReason { None, PlusFirst, PlusCadence, MinusCadence };

[[nodiscard]] std::string_view to_string(RejectReason reason) noexcept;

struct ImmediateDecision {
    std::optional<PlusBucketKey> assigned_plus;
    std::optional<MinusBucketKey> assigned_minus;
    std::uint64_t plus_ordinal = 0;   ///< 1-based position in its T+ bucket, 0 if unassigned
    std::uint64_t minus_ordinal = 0;  ///< 1-based position in its T- bucket, 0 if unassigned
    bool plus_rejects = false;
    bool minus_rejects = false;
    bool reject = false;
    /// When both tables fire the T+ reason is recorded.
    RejectReason reason = RejectReason::None;

    friend bool operator==(const ImmediateDecision&, const ImmediateDecision&) = default;
};

/// Keys for the tables the job qualifies for (none, one, or both).
[[nodiscard]] std::pair<std::optional<PlusBucketKey>, std::optional<MinusBucketKey>> bucket_keys(
    const AlphaBreakdown& breakdown, const Job& job, MachineIndex machine);

enum class TableKind { Plus, Minus };

struct BucketReport {
    TableKind table = TableKind::Plus;
    std::vector<int> key;
    std::uint64_t count = 0;
    std::vector<std::uint64_t> rejected_ordinals;
    std::vector<JobId> members;  ///< assignment order
    Rational assigned_weight;
    Rational rejected_weight;
    /// Weight of the first job assigned to the bucket.
    Rational first_weight;
};

/// T+ rejects ordinals 1, 1+k, 1+2k, ...; T- rejects k, 2k, 3k, ... (k = 1/eps).
[[nodiscard]] bool plus_cadence_rejects(std::uint64_t ordinal, std::int64_t k) noexcept;
[[nodiscard]] bool minus_cadence_rejects(std::uint64_t ordinal, std::int64_t k) noexcept;

/// The pair of bucket tables owned by one machine's scheduler.
///
/// Buckets are created on first assignment and live for the whole run. Both
/// counters advance on every assignment, whatever the other table decides.
class RejectionTables {
public:
    explicit RejectionTables(const Rational& epsilon);

    /// Called exactly once per arrival, in arrival order. Throws DuplicateAdmission.
    ImmediateDecision admit(const Job& job, MachineIndex machine, const AlphaBreakdown& breakdown);

    /// Every bucket, T+ first, each table ordered by key.
    [[nodiscard]] std::vector<BucketReport> audit_tables() const;

    [[nodiscard]] std::int64_t period() const noexcept { return period_; }

private:
    struct Bucket {
        BucketCounter counter;
        std::vector<std::uint64_t> rejected;
        std::vector<JobId> members;
        Rational assigned_weight;
        Rational rejected_weight;
        Rational first_weight;
    };

    static std::uint64_t assign(Bucket& bucket, const Job& job, bool (*rule)(std::uint64_t, std::int64_t),
                                std::int64_t period, bool& rejected);

    std::int64_t period_;
    std::map<PlusBucketKey, Bucket> plus_;
    std::map<MinusBucketKey, Bucket> minus_;
    std::set<JobId> admitted_;
};

}  // namespace rejsched
