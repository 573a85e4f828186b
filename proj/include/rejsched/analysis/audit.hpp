#pragma once

#include <rejsched/scheduler/trace.hpp>

#include <span>

namespace rejsched {

/// Rejected-weight budgets of one machine's run, with W the total released
/// weight:
///   (a) delayed-rejected weight <= eps W
///   (b) T- rejected weight <= 4 eps w(J-)            (also per bucket)
///   (c) T+ rejected weight without first-in-bucket <= 2 eps w(J+)   (also per bucket)
///   (d) first-in-bucket T+ weight w(J_f+) <= 8 eps W
///   (e) all rejected weight <= 15 eps W
struct BudgetReport {
    Rational epsilon;
    Rational total_weight;
    Rational delayed_weight;
    Rational minus_assigned_weight;
    Rational minus_rejected_weight;
    Rational plus_assigned_weight;
    Rational plus_nonfirst_rejected_weight;
    Rational plus_first_weight;
    Rational immediate_weight;
    Rational rejected_weight;  ///< immediate + delayed, each job once

    bool delayed_ok = true;
    bool minus_ok = true;
    bool plus_ok = true;
    bool first_ok = true;
    bool total_ok = true;
    std::size_t bucket_violations = 0;

    /// (a)-(c) including the per-bucket forms.
    [[nodiscard]] bool exact_budgets_hold() const noexcept {
        return delayed_ok && minus_ok && plus_ok && bucket_violations == 0;
    }
    [[nodiscard]] bool all_hold() const noexcept { return exact_budgets_hold() && first_ok && total_ok; }

    /// Weight fraction helpers (0 when W = 0).
    [[nodiscard]] Rational delayed_fraction() const;
    [[nodiscard]] Rational immediate_fraction() const;
    [[nodiscard]] Rational rejected_fraction() const;
};

/// Uses the job decisions and the table audit stored in the trace.
[[nodiscard]] BudgetReport audit_rejections(const ScheduleTrace& trace);

/// Sums the per-machine reports of a multi-machine run.
[[nodiscard]] BudgetReport combine(std::span<const BudgetReport> reports);

}  // namespace rejsched
