#include <rejsched/analysis/audit.hpp>

namespace rejsched {

namespace {

Rational fraction(const Rational& part, const Rational& whole) {
    return whole.sign() == 0 ? Rational(0) : part / whole;
}

void evaluate(BudgetReport& r) {
    const Rational& eps = r.epsilon;
    r.delayed_ok = r.delayed_weight <= eps * r.total_weight;
    r.minus_ok = r.minus_rejected_weight <= Rational(4) * eps * r.minus_assigned_weight;
    r.plus_ok = r.plus_nonfirst_rejected_weight <= Rational(2) * eps * r.plus_assigned_weight;
    r.first_ok = r.plus_first_weight <= Rational(8) * eps * r.total_weight;
    r.total_ok = r.rejected_weight <= Rational(15) * eps * r.total_weight;
}

}  // namespace

Rational BudgetReport::delayed_fraction() const { return fraction(delayed_weight, total_weight); }
Rational BudgetReport::immediate_fraction() const { return fraction(immediate_weight, total_weight); }
Rational BudgetReport::rejected_fraction() const { return fraction(rejected_weight, total_weight); }

BudgetReport audit_rejections(const ScheduleTrace& trace) {
    BudgetReport r;
    r.epsilon = trace.epsilon;
    for (const JobRecord& job : trace.jobs) {
        r.total_weight += job.weight;
        if (job.immediately_rejected()) {
            r.immediate_weight += job.weight;
            r.rejected_weight += job.weight;
        } else if (job.promoted_at) {
            r.delayed_weight += job.weight;
            r.rejected_weight += job.weight;
        }
    }
    for (const BucketReport& b : trace.tables) {
        if (b.table == TableKind::Minus) {
            r.minus_assigned_weight += b.assigned_weight;
            r.minus_rejected_weight += b.rejected_weight;
            if (b.rejected_weight > Rational(4) * trace.epsilon * b.assigned_weight) {
                ++r.bucket_violations;
            }
        } else {
            // Ordinal 1 is always rejected in T+; the rest form the cadence part.
            const Rational nonfirst = b.rejected_weight - b.first_weight;
            r.plus_assigned_weight += b.assigned_weight;
            r.plus_nonfirst_rejected_weight += nonfirst;
            r.plus_first_weight += b.first_weight;
            if (nonfirst > Rational(2) * trace.epsilon * b.assigned_weight) {
                ++r.bucket_violations;
            }
        }
    }
    evaluate(r);
    return r;
}

BudgetReport combine(std::span<const BudgetReport> reports) {
    BudgetReport out;
    for (const BudgetReport& r : reports) {
        out.epsilon = r.epsilon;
        out.total_weight += r.total_weight;
        out.delayed_weight += r.delayed_weight;
        out.minus_assigned_weight += r.minus_assigned_weight;
        out.minus_rejected_weight += r.minus_rejected_weight;
        out.plus_assigned_weight += r.plus_assigned_weight;
        out.plus_nonfirst_rejected_weight += r.plus_nonfirst_rejected_weight;
        out.plus_first_weight += r.plus_first_weight;
        out.immediate_weight += r.immediate_weight;
        out.rejected_weight += r.rejected_weight;
        out.bucket_violations += r.bucket_violations;
    }
    evaluate(out);
    return out;
}

}  // namespace rejsched
