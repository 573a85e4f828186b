#pragma once

#include <rejsched/analysis/audit.hpp>
#include <rejsched/analysis/duals.hpp>
#include <rejsched/analysis/metrics.hpp>
#include <rejsched/analysis/profile.hpp>
#include <rejsched/baselines/baselines.hpp>
#include <rejsched/dispatch/dispatch.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace rejsched {

using Json = nlohmann::ordered_json;

/// B, the no-rejection greedy and the fractional benchmark on one machine.
struct PolicyRow {
    std::string policy;
    Rational flow;
    std::optional<Rational> ratio;  ///< flow / benchmark, nullopt if the benchmark is 0
};

struct PolicyComparison {
    Benchmark benchmark;
    std::vector<PolicyRow> rows;  ///< empty for an empty instance
};

/// Single-machine comparison on machine 0 of a validated instance.
[[nodiscard]] PolicyComparison compare_policies(const Instance& instance, const OracleLimits& limits = {});

// Structured records. Every rational is rendered as an exact "n" or "n/d"
// string; the output carries no floating point values.
[[nodiscard]] Json to_json(const Rational& value);
[[nodiscard]] Json to_json(const ScheduleTrace& trace);
[[nodiscard]] Json to_json(const Metrics& metrics);
[[nodiscard]] Json to_json(const StructuralReport& report);
[[nodiscard]] Json to_json(const BudgetReport& report);
[[nodiscard]] Json to_json(const DualCertificate& cert);
[[nodiscard]] Json to_json(const LowerBoundVerdict& verdict);
[[nodiscard]] Json to_json(const DensityProfile& profile);
[[nodiscard]] Json to_json(const PolicyComparison& comparison);
[[nodiscard]] Json to_json(const DispatchDecision& decision);

[[nodiscard]] std::string_view to_string(BenchmarkMethod method) noexcept;

}  // namespace rejsched
