#include <rejsched/harness/report.hpp>

namespace rejsched {

std::string_view to_string(BenchmarkMethod method) noexcept {
    return method == BenchmarkMethod::Transport ? "transport" : "hdf_lp";
}

PolicyComparison compare_policies(const Instance& instance, const OracleLimits& limits) {
    PolicyComparison out;
    if (instance.jobs.empty()) {
        return out;
    }
    const std::vector<OfflineJob> jobs = offline_jobs(instance, 0);
    out.benchmark = offline_benchmark(jobs, Rational(1), limits);
    auto row = [&](std::string name, Rational flow) {
        std::optional<Rational> r;
        if (out.benchmark.value.sign() != 0) {
            r = flow / out.benchmark.value;
        }
        out.rows.push_back({std::move(name), std::move(flow), std::move(r)});
    };
    row("B", compute_metrics(run(instance, 0)).weighted_flow_B);
    row("greedy_no_rejection", greedy_nonpreemptive_flow(jobs));
    row("benchmark", out.benchmark.value);
    return out;
}

Json to_json(const Rational& value) { return value.str(); }

namespace {

Json optional_time(const std::optional<Time>& t) { return t ? Json(*t) : Json(nullptr); }

Json optional_ratio(const std::optional<Rational>& r) { return r ? to_json(*r) : Json(nullptr); }

Json to_json(const AlphaBreakdown& a) {
    return Json{{"alpha", to_json(a.alpha)},
                {"alpha_plus", to_json(a.alpha_plus)},
                {"alpha_minus", to_json(a.alpha_minus)},
                {"self", to_json(a.self_term)},
                {"class", a.density_class},
                {"in_j_plus", a.in_j_plus},
                {"in_j_minus", a.in_j_minus}};
}

Json to_json(const ImmediateDecision& d) {
    Json j{{"reject", d.reject}, {"reason", std::string(to_string(d.reason))}};
    if (d.assigned_plus) {
        j["plus_bucket"] = {d.assigned_plus->kappa, d.assigned_plus->lambda};
        j["plus_ordinal"] = d.plus_ordinal;
    }
    if (d.assigned_minus) {
        j["minus_bucket"] = {d.assigned_minus->gamma, d.assigned_minus->delta, d.assigned_minus->eta};
        j["minus_ordinal"] = d.minus_ordinal;
    }
    return j;
}

Json to_json(const BucketReport& b) {
    return Json{{"table", b.table == TableKind::Plus ? "plus" : "minus"},
                {"key", b.key},
                {"count", b.count},
                {"rejected_ordinals", b.rejected_ordinals},
                {"members", b.members},
                {"assigned_weight", to_json(b.assigned_weight)},
                {"rejected_weight", to_json(b.rejected_weight)},
                {"first_weight", to_json(b.first_weight)}};
}

}  // namespace

Json to_json(const ScheduleTrace& trace) {
    Json slots = Json::array();
    for (const SlotRecord& s : trace.slots) {
        Json j{{"t", s.t}};
        j["a"] = s.a_runs ? Json(*s.a_runs) : Json(nullptr);
        j["b"] = s.b_runs ? Json(*s.b_runs) : Json(nullptr);
        j["b_idles"] = s.b_idles;
        j["beta"] = to_json(s.beta);
        slots.push_back(std::move(j));
    }
    Json events = Json::array();
    for (const TraceEvent& e : trace.events) {
        events.push_back({{"t", e.time}, {"job", e.job}, {"kind", std::string(to_string(e.kind))}});
    }
    Json jobs = Json::array();
    for (const JobRecord& r : trace.jobs) {
        Json j{{"id", r.id},
               {"release", r.release},
               {"weight", to_json(r.weight)},
               {"size", r.size},
               {"alpha", to_json(r.alpha)},
               {"decision", to_json(r.decision)}};
        j["phi"] = r.phi ? Json(*r.phi) : Json(nullptr);
        j["first_start"] = optional_time(r.first_start);
        j["promoted_at"] = optional_time(r.promoted_at);
        j["completed_a"] = optional_time(r.completed_a);
        j["completed_b"] = optional_time(r.completed_b);
        j["departure"] = optional_time(r.departure);
        jobs.push_back(std::move(j));
    }
    Json tables = Json::array();
    for (const BucketReport& b : trace.tables) {
        tables.push_back(to_json(b));
    }
    return Json{{"type", "trace"},         {"machine", trace.machine}, {"epsilon", to_json(trace.epsilon)},
                {"complete", trace.complete}, {"jobs", std::move(jobs)}, {"slots", std::move(slots)},
                {"events", std::move(events)}, {"tables", std::move(tables)}};
}

Json to_json(const Metrics& m) {
    return Json{{"type", "metrics"},
                {"weighted_flow_B", to_json(m.weighted_flow_B)},
                {"fractional_flow_A", to_json(m.fractional_flow_A)},
                {"departure_objective", to_json(m.departure_objective)},
                {"rejected_weight_immediate", to_json(m.rejected_weight_immediate)},
                {"rejected_weight_delayed", to_json(m.rejected_weight_delayed)},
                {"total_weight", to_json(m.total_weight)},
                {"jobs", m.jobs},
                {"completed_b", m.completed_b},
                {"immediate_rejections", m.immediate_rejections},
                {"delayed_rejections", m.delayed_rejections}};
}

Json to_json(const StructuralReport& r) {
    return Json{{"type", "structure"},
                {"ok", r.ok()},
                {"b_never_preempts", r.b_never_preempts},
                {"mirror", r.mirror},
                {"one_terminal_event", r.one_terminal_event},
                {"phi_load", r.phi_load},
                {"completion_identities", r.completion_identities},
                {"rejection_lower_bound", r.rejection_lower_bound},
                {"violations", r.violations}};
}

Json to_json(const BudgetReport& r) {
    return Json{{"type", "budget"},
                {"epsilon", to_json(r.epsilon)},
                {"total_weight", to_json(r.total_weight)},
                {"delayed_weight", to_json(r.delayed_weight)},
                {"delayed_fraction", to_json(r.delayed_fraction())},
                {"immediate_weight", to_json(r.immediate_weight)},
                {"immediate_fraction", to_json(r.immediate_fraction())},
                {"rejected_weight", to_json(r.rejected_weight)},
                {"rejected_fraction", to_json(r.rejected_fraction())},
                {"minus_assigned_weight", to_json(r.minus_assigned_weight)},
                {"minus_rejected_weight", to_json(r.minus_rejected_weight)},
                {"plus_assigned_weight", to_json(r.plus_assigned_weight)},
                {"plus_nonfirst_rejected_weight", to_json(r.plus_nonfirst_rejected_weight)},
                {"plus_first_weight", to_json(r.plus_first_weight)},
                {"delayed_ok", r.delayed_ok},
                {"minus_ok", r.minus_ok},
                {"plus_ok", r.plus_ok},
                {"first_ok", r.first_ok},
                {"total_ok", r.total_ok},
                {"bucket_violations", r.bucket_violations},
                {"exact_budgets_hold", r.exact_budgets_hold()}};
}

Json to_json(const DualCertificate& c) {
    Json alphas = Json::array();
    for (const auto& [id, a] : c.alphas) {
        alphas.push_back({{"job", id}, {"alpha", to_json(a)}});
    }
    Json betas = Json::array();
    for (const auto& [t, b] : c.betas) {
        betas.push_back({{"t", t}, {"beta", to_json(b)}});
    }
    Json violations = Json::array();
    for (const DualViolation& v : c.violations) {
        violations.push_back({{"job", v.job}, {"t", v.t}, {"lhs", to_json(v.lhs)}, {"rhs", to_json(v.rhs)}});
    }
    return Json{{"type", "certificate"},
                {"feasible", c.feasible},
                {"speedup", to_json(c.speedup)},
                {"objective", to_json(c.objective)},
                {"sum_alpha", to_json(c.sum_alpha)},
                {"sum_beta", to_json(c.sum_beta)},
                {"pairs_checked", c.pairs_checked},
                {"pairs_implied", c.pairs_implied},
                {"violation_count", c.violation_count},
                {"violations", std::move(violations)},
                {"note", "beta sampled at integer t after arrivals; sum beta >= continuous fractional flow of A"},
                {"alphas", std::move(alphas)},
                {"betas", std::move(betas)}};
}

Json to_json(const LowerBoundVerdict& v) {
    Json j{{"type", "lower_bound"},
           {"ok", v.ok()},
           {"benchmark", to_json(v.benchmark)},
           {"immediate_alpha", to_json(v.immediate_alpha)},
           {"kept_alpha", to_json(v.kept_alpha)},
           {"work_over_epsilon", to_json(v.work_over_epsilon)},
           {"fractional_flow_A", to_json(v.fractional_flow_A)},
           {"opt_lower_bound", v.opt_lower_bound},
           {"algorithm_upper_bound", v.algorithm_upper_bound}};
    j["augmented_lower_bound"] = v.augmented_lower_bound ? Json(*v.augmented_lower_bound) : Json(nullptr);
    return j;
}

Json to_json(const DensityProfile& p) {
    Json classes = Json::array();
    for (const auto& [delta, s] : p.classes) {
        Json pts = Json::array();
        for (const ClassPoint& pt : s.points) {
            pts.push_back({pt.t, to_json(pt.size), to_json(pt.weight)});
        }
        classes.push_back({{"class", delta},
                           {"max_size", to_json(s.max_size)},
                           {"max_weight", to_json(s.max_weight)},
                           {"points", std::move(pts)}});
    }
    Json sets = Json::array();
    for (const MinusIndexSet& s : p.index_sets) {
        sets.push_back({{"job", s.job}, {"class", s.delta}, {"classes", s.classes}, {"coverage", optional_ratio(s.coverage)}});
    }
    return Json{{"type", "profile"},
                {"lambda_plus", to_json(p.lambda_plus)},
                {"total_work", to_json(p.total_work)},
                {"sum_peak_products", to_json(p.sum_peak_products)},
                {"class_product_ratio", optional_ratio(p.class_product_ratio)},
                {"plus_ratio", optional_ratio(p.plus_ratio)},
                {"minus_ratio", optional_ratio(p.minus_ratio)},
                {"alpha_ratio", optional_ratio(p.alpha_ratio)},
                {"first_minus_ratio", optional_ratio(p.first_minus_ratio)},
                {"classes", std::move(classes)},
                {"index_sets", std::move(sets)}};
}

Json to_json(const PolicyComparison& c) {
    Json rows = Json::array();
    for (const PolicyRow& r : c.rows) {
        rows.push_back({{"policy", r.policy}, {"flow", to_json(r.flow)}, {"ratio", optional_ratio(r.ratio)}});
    }
    Json j{{"type", "comparison"}, {"rows", std::move(rows)}};
    if (!c.rows.empty()) {
        j["benchmark"] = to_json(c.benchmark.value);
        j["benchmark_method"] = std::string(to_string(c.benchmark.method));
    }
    return j;
}

Json to_json(const DispatchDecision& d) {
    return Json{{"job", d.job}, {"machine", d.machine}, {"score", to_json(d.score)}};
}

}  // namespace rejsched
