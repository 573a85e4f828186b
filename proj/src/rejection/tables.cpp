#include <rejsched/core/error.hpp>
#include <rejsched/rejection/tables.hpp>

namespace rejsched {

std::string_view to_string(RejectReason reason) noexcept {
    switch (reason) {
        case RejectReason::None: return "none";
        case RejectReason::PlusFirst: return "plus_first";
        case RejectReason::PlusCadence: return "plus_cadence";
        case RejectReason::MinusCadence: return "minus_cadence";
    }
    return "none";
}

std::pair<std::optional<PlusBucketKey>, std::optional<MinusBucketKey>> bucket_keys(
    const AlphaBreakdown& breakdown, const Job& job, MachineIndex machine) {
    std::optional<PlusBucketKey> plus;
    std::optional<MinusBucketKey> minus;
    if (breakdown.in_j_plus) {
        plus = PlusBucketKey{floor_log(breakdown.alpha_plus / job.weight), floor_log(job.weight)};
    }
    if (breakdown.in_j_minus) {
        minus = MinusBucketKey{floor_log(breakdown.alpha_minus), density_class(job, machine),
                               floor_log(Rational(job.size_on(machine)))};
    }
    return {plus, minus};
}

bool plus_cadence_rejects(std::uint64_t ordinal, std::int64_t k) noexcept {
    return ordinal >= 1 && (ordinal - 1) % static_cast<std::uint64_t>(k) == 0;
}

bool minus_cadence_rejects(std::uint64_t ordinal, std::int64_t k) noexcept {
    return ordinal >= 1 && ordinal % static_cast<std::uint64_t>(k) == 0;
}

RejectionTables::RejectionTables(const Rational& epsilon) : period_(epsilon_reciprocal(epsilon)) {}

std::uint64_t RejectionTables::assign(Bucket& bucket, const Job& job, bool (*rule)(std::uint64_t, std::int64_t),
                                      std::int64_t period, bool& rejected) {
    const std::uint64_t ordinal = ++bucket.counter.count;
    if (ordinal == 1) {
        bucket.first_weight = job.weight;
    }
    bucket.members.push_back(job.id);
    bucket.assigned_weight += job.weight;
    rejected = rule(ordinal, period);
    if (rejected) {
        bucket.rejected.push_back(ordinal);
        bucket.rejected_weight += job.weight;
    }
    return ordinal;
}

ImmediateDecision RejectionTables::admit(const Job& job, MachineIndex machine, const AlphaBreakdown& breakdown) {
    if (!admitted_.insert(job.id).second) {
        throw Error(ErrorCode::DuplicateAdmission, "job " + std::to_string(job.id));
    }
    ImmediateDecision d;
    auto [plus_key, minus_key] = bucket_keys(breakdown, job, machine);
    d.assigned_plus = plus_key;
    d.assigned_minus = minus_key;
    if (plus_key) {
        d.plus_ordinal = assign(plus_[*plus_key], job, &plus_cadence_rejects, period_, d.plus_rejects);
    }
    if (minus_key) {
        d.minus_ordinal = assign(minus_[*minus_key], job, &minus_cadence_rejects, period_, d.minus_rejects);
    }
    d.reject = d.plus_rejects || d.minus_rejects;
    if (d.plus_rejects) {
        d.reason = d.plus_ordinal == 1 ? RejectReason::PlusFirst : RejectReason::PlusCadence;
    } else if (d.minus_rejects) {
        d.reason = RejectReason::MinusCadence;
    }
    return d;
}

std::vector<BucketReport> RejectionTables::audit_tables() const {
    std::vector<BucketReport> out;
    out.reserve(plus_.size() + minus_.size());
    auto fill = [](BucketReport& r, const Bucket& b) {
        r.count = b.counter.count;
        r.rejected_ordinals = b.rejected;
        r.members = b.members;
        r.assigned_weight = b.assigned_weight;
        r.rejected_weight = b.rejected_weight;
        r.first_weight = b.first_weight;
    };
    for (const auto& [key, bucket] : plus_) {
        BucketReport r;
        r.table = TableKind::Plus;
        r.key = {key.kappa, key.lambda};
        fill(r, bucket);
        out.push_back(std::move(r));
    }
    for (const auto& [key, bucket] : minus_) {
        BucketReport r;
        r.table = TableKind::Minus;
        r.key = {key.gamma, key.delta, key.eta};
        fill(r, bucket);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace rejsched
