#include <rejsched/analysis/metrics.hpp>
#include <rejsched/core/error.hpp>

#include <algorithm>
#include <map>

namespace rejsched {

std::unordered_map<JobId, std::vector<Time>> runs_by_job(const ScheduleTrace& trace) {
    std::unordered_map<JobId, std::vector<Time>> out;
    for (const SlotRecord& slot : trace.slots) {
        if (slot.a_runs) {
            out[*slot.a_runs].push_back(slot.t);
        }
    }
    return out;
}

Rational accrued_fractional_flow(const JobRecord& job, std::span<const Time> runs, Time until) {
    const Rational density = job.density();
    const Rational half(1, 2);
    Rational remaining(job.size);
    Rational area;
    Time cursor = job.release;
    for (Time u : runs) {
        if (u >= until || remaining.sign() == 0) {
            break;
        }
        area += density * remaining * Rational(u - cursor);
        // Residual falls linearly from remaining to remaining - 1 inside the slot.
        area += density * (remaining - half);
        remaining -= Rational(1);
        cursor = u + 1;
    }
    if (remaining.sign() > 0 && until > cursor) {
        area += density * remaining * Rational(until - cursor);
    }
    return area;
}

Metrics compute_metrics(const ScheduleTrace& trace) {
    Metrics m;
    const auto runs = runs_by_job(trace);
    for (const JobRecord& job : trace.jobs) {
        if (!job.departure) {
            throw Error(ErrorCode::IncompleteTrace, "job " + std::to_string(job.id) + " has no departure");
        }
        ++m.jobs;
        m.total_weight += job.weight;
        m.departure_objective += job.weight * Rational(*job.departure - job.release);
        if (job.immediately_rejected()) {
            ++m.immediate_rejections;
            m.rejected_weight_immediate += job.weight;
            continue;
        }
        if (!job.completed_a) {
            throw Error(ErrorCode::IncompleteTrace, "job " + std::to_string(job.id) + " unfinished in A");
        }
        const auto it = runs.find(job.id);
        m.fractional_flow_A += accrued_fractional_flow(job, it->second, *job.completed_a);
        if (job.promoted_at) {
            ++m.delayed_rejections;
            m.rejected_weight_delayed += job.weight;
        } else {
            ++m.completed_b;
            m.weighted_flow_B += job.weight * Rational(*job.completed_b - job.release);
        }
    }
    return m;
}

std::vector<OfflineJob> offline_jobs(const ScheduleTrace& trace) {
    std::vector<OfflineJob> out;
    out.reserve(trace.jobs.size());
    for (const JobRecord& r : trace.jobs) {
        out.push_back({r.id, r.release, r.weight, r.size});
    }
    return out;
}

namespace {

bool in_l_set(const JobRecord& job, Time t) {
    return job.promoted_at && *job.promoted_at <= t && (!job.completed_a || t < *job.completed_a);
}

}  // namespace

StructuralReport check_structure(const ScheduleTrace& trace) {
    StructuralReport rep;
    std::unordered_map<JobId, const JobRecord*> by_id;
    for (const JobRecord& r : trace.jobs) {
        by_id.emplace(r.id, &r);
    }
    auto fail = [&rep](bool& flag, std::string what) {
        flag = false;
        if (rep.violations.size() < 64) {
            rep.violations.push_back(std::move(what));
        }
    };

    // Mirror: B runs A's job unless it is in L(t), in which case B idles.
    std::unordered_map<JobId, std::vector<Time>> b_runs;
    for (const SlotRecord& slot : trace.slots) {
        if (!slot.a_runs) {
            if (slot.b_runs || slot.b_idles) {
                fail(rep.mirror, "slot " + std::to_string(slot.t) + ": B active while A idle");
            }
            continue;
        }
        const bool in_l = in_l_set(*by_id.at(*slot.a_runs), slot.t);
        const bool ok = in_l ? (!slot.b_runs && slot.b_idles) : (slot.b_runs == slot.a_runs && !slot.b_idles);
        if (!ok) {
            fail(rep.mirror, "slot " + std::to_string(slot.t));
        }
        if (slot.b_runs) {
            b_runs[*slot.b_runs].push_back(slot.t);
        }
    }

    // Exactly one terminal event per job.
    std::map<JobId, int> terminal;
    for (const TraceEvent& e : trace.events) {
        if (e.kind == EventKind::ImmediateReject || e.kind == EventKind::CompleteB ||
            e.kind == EventKind::DelayedRejectB) {
            ++terminal[e.job];
        }
    }
    for (const JobRecord& r : trace.jobs) {
        const auto it = terminal.find(r.id);
        const auto dep = trace.departure.find(r.id);
        if (it == terminal.end() || it->second != 1 || dep == trace.departure.end() || !r.departure ||
            dep->second != *r.departure) {
            fail(rep.one_terminal_event, "job " + std::to_string(r.id));
        }
    }
    if (terminal.size() != trace.jobs.size()) {
        fail(rep.one_terminal_event, "terminal events for unknown jobs");
    }

    // B never preempts: one contiguous block per job, ending at completion
    // (length p_j) or at the promotion instant.
    const auto a_runs = runs_by_job(trace);
    for (const JobRecord& r : trace.jobs) {
        const auto it = b_runs.find(r.id);
        const std::vector<Time> none;
        const std::vector<Time>& slots = it == b_runs.end() ? none : it->second;
        bool ok = true;
        for (std::size_t i = 1; i < slots.size(); ++i) {
            ok = ok && slots[i] == slots[i - 1] + 1;
        }
        if (r.completed_b) {
            ok = ok && static_cast<std::int64_t>(slots.size()) == r.size && !slots.empty() &&
                 slots.back() + 1 == *r.completed_b;
        } else if (r.promoted_at) {
            ok = ok && !slots.empty() && slots.back() + 1 == *r.promoted_at;
        } else {
            ok = ok && slots.empty();
        }
        if (!ok) {
            fail(rep.b_never_preempts, "job " + std::to_string(r.id));
        }
    }

    // phi-load: w(phi^-1(j)) without its last-arriving member is <= w_j / eps.
    std::unordered_map<JobId, std::vector<const JobRecord*>> preimage;
    for (const JobRecord& r : trace.jobs) {
        if (r.phi) {
            preimage[*r.phi].push_back(&r);
        }
    }
    for (const auto& [target, members] : preimage) {
        Rational load;
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            load += members[i]->weight;
        }
        const JobRecord& t = *by_id.at(target);
        if (load > t.weight / trace.epsilon) {
            fail(rep.phi_load, "job " + std::to_string(target) + " load " + load.str());
        }
    }

    for (const JobRecord& r : trace.jobs) {
        const auto runs_it = a_runs.find(r.id);
        const std::span<const Time> runs =
            runs_it == a_runs.end() ? std::span<const Time>{} : std::span<const Time>(runs_it->second);
        if (r.completed_b) {
            const Rational wait = r.weight * Rational(*r.first_start - r.release);
            const Rational work = r.weight * Rational(r.size);
            const Rational fractional = accrued_fractional_flow(r, runs, *r.completed_a);
            const Rational integral = r.weight * Rational(*r.completed_b - r.release);
            if (fractional != wait + work / Rational(2) || integral != wait + work ||
                integral > Rational(2) * fractional) {
                fail(rep.completion_identities, "job " + std::to_string(r.id));
            }
        }
        if (r.promoted_at) {
            const Rational accrued = accrued_fractional_flow(r, runs, *r.promoted_at);
            if (accrued < r.weight * Rational(*r.promoted_at - r.release) / Rational(2)) {
                fail(rep.rejection_lower_bound, "job " + std::to_string(r.id));
            }
        }
    }
    return rep;
}

}  // namespace rejsched
