#include <rejsched/core/error.hpp>
#include <rejsched/scheduler/single_machine.hpp>

#include <algorithm>
#include <stdexcept>

namespace rejsched {

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case EventKind::ImmediateReject: return "immediate_reject";
        case EventKind::PromoteToL: return "promote_to_L";
        case EventKind::CompleteA: return "complete_A";
        case EventKind::CompleteB: return "complete_B";
        case EventKind::DelayedRejectB: return "delayed_reject_B";
    }
    return "unknown";
}

const JobRecord& ScheduleTrace::job(JobId id) const {
    for (const JobRecord& r : jobs) {
        if (r.id == id) {
            return r;
        }
    }
    throw std::out_of_range("no job " + std::to_string(id) + " in trace");
}

bool same_trace(const ScheduleTrace& a, const ScheduleTrace& b) {
    if (a.machine != b.machine || a.epsilon != b.epsilon || a.complete != b.complete ||
        a.events != b.events || a.departure != b.departure || a.slots.size() != b.slots.size() ||
        a.jobs.size() != b.jobs.size() || a.tables.size() != b.tables.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        const auto& x = a.slots[i];
        const auto& y = b.slots[i];
        if (x.t != y.t || x.a_runs != y.a_runs || x.b_runs != y.b_runs || x.b_idles != y.b_idles ||
            x.beta != y.beta) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.jobs.size(); ++i) {
        const auto& x = a.jobs[i];
        const auto& y = b.jobs[i];
        if (x.id != y.id || x.release != y.release || x.weight != y.weight || x.size != y.size ||
            !(x.alpha == y.alpha) || !(x.decision == y.decision) || x.phi != y.phi ||
            x.first_start != y.first_start || x.promoted_at != y.promoted_at ||
            x.completed_a != y.completed_a || x.completed_b != y.completed_b || x.departure != y.departure) {
            return false;
        }
    }
    for (std::size_t i = 0; i < a.tables.size(); ++i) {
        const auto& x = a.tables[i];
        const auto& y = b.tables[i];
        if (x.table != y.table || x.key != y.key || x.count != y.count ||
            x.rejected_ordinals != y.rejected_ordinals || x.members != y.members ||
            x.assigned_weight != y.assigned_weight || x.rejected_weight != y.rejected_weight) {
            return false;
        }
    }
    return true;
}

SingleMachineScheduler::SingleMachineScheduler(MachineIndex machine, const Rational& epsilon)
    : machine_(machine), epsilon_(epsilon), tables_(epsilon) {
    trace_.machine = machine;
    trace_.epsilon = epsilon;
}

std::optional<JobId> SingleMachineScheduler::running() const noexcept {
    if (running_) {
        return running_->job;
    }
    return std::nullopt;
}

JobRecord& SingleMachineScheduler::record(JobId id) {
    return trace_.jobs[record_index_.at(id)];
}

AlphaBreakdown SingleMachineScheduler::preview_alpha(const Job& job) const {
    return compute_alpha(job, machine_, active_, epsilon_);
}

ArrivalOutcome SingleMachineScheduler::on_arrival(const Job& job) {
    if (job.release < clock_) {
        throw Error(ErrorCode::ArrivalInPast, "job " + std::to_string(job.id) + " released at " +
                                                  std::to_string(job.release) + ", clock " + std::to_string(clock_));
    }
    advance_to(job.release);

    JobRecord rec;
    rec.id = job.id;
    rec.release = job.release;
    rec.weight = job.weight;
    rec.size = job.size_on(machine_);
    rec.alpha = compute_alpha(job, machine_, active_, epsilon_);
    rec.decision = tables_.admit(job, machine_, rec.alpha);

    // Every released job counts towards promotion, kept or rejected.
    arrivals_since_start_ += job.weight;

    ArrivalOutcome outcome = ArrivalOutcome::Activated;
    if (rec.decision.reject) {
        rec.departure = job.release;
        trace_.departure[job.id] = job.release;
        trace_.events.push_back({clock_, job.id, EventKind::ImmediateReject});
        outcome = ArrivalOutcome::Rejected;
    } else {
        if (running_ && !l_set_.contains(running_->job)) {
            rec.phi = running_->job;
        }
        active_.push_back(ResidualJob::fresh(job, machine_));
    }
    record_index_[job.id] = trace_.jobs.size();
    trace_.jobs.push_back(std::move(rec));

    promote_check();
    return outcome;
}

std::optional<JobId> SingleMachineScheduler::promote_check() {
    if (!running_ || l_set_.contains(running_->job)) {
        return std::nullopt;
    }
    const JobId id = running_->job;
    const auto it = std::find_if(active_.begin(), active_.end(), [id](const ResidualJob& r) { return r.id() == id; });
    if (arrivals_since_start_ <= it->job->weight / epsilon_) {
        return std::nullopt;
    }
    l_set_.insert(id);
    JobRecord& rec = record(id);
    rec.promoted_at = clock_;
    rec.departure = clock_;
    trace_.departure[id] = clock_;
    trace_.events.push_back({clock_, id, EventKind::PromoteToL});
    trace_.events.push_back({clock_, id, EventKind::DelayedRejectB});
    return id;
}

std::size_t SingleMachineScheduler::pick_hdf() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < active_.size(); ++i) {
        const ResidualJob& c = active_[i];
        const ResidualJob& b = active_[best];
        const auto order = c.density <=> b.density;
        if (order > 0 || (order == 0 && (c.job->release < b.job->release ||
                                         (c.job->release == b.job->release && c.id() < b.id())))) {
            best = i;
        }
    }
    return best;
}

void SingleMachineScheduler::complete(std::size_t index) {
    const JobId id = active_[index].id();
    const Time end = clock_ + 1;
    JobRecord& rec = record(id);
    rec.completed_a = end;
    trace_.events.push_back({end, id, EventKind::CompleteA});
    if (l_set_.erase(id) == 0) {
        rec.completed_b = end;
        rec.departure = end;
        trace_.departure[id] = end;
        trace_.events.push_back({end, id, EventKind::CompleteB});
    }
    active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(index));
    running_.reset();
}

std::optional<JobId> SingleMachineScheduler::select_slot() {
    if (active_.empty()) {
        running_.reset();
        ++clock_;
        return std::nullopt;
    }

    SlotRecord slot;
    slot.t = clock_;
    for (const ResidualJob& r : active_) {
        slot.beta += r.residual_weight();
    }

    std::size_t index = 0;
    if (running_ && !l_set_.contains(running_->job)) {
        const JobId id = running_->job;
        index = static_cast<std::size_t>(
            std::find_if(active_.begin(), active_.end(), [id](const ResidualJob& r) { return r.id() == id; }) -
            active_.begin());
    } else {
        index = pick_hdf();
        const JobId id = active_[index].id();
        if (!running_ || running_->job != id) {
            running_ = Run{id, clock_};
            arrivals_since_start_ = Rational(0);
        }
    }

    const JobId id = active_[index].id();
    JobRecord& rec = record(id);
    if (!rec.first_start) {
        rec.first_start = clock_;
    }
    const bool in_l = l_set_.contains(id);
    slot.a_runs = id;
    slot.b_idles = in_l;
    if (!in_l) {
        slot.b_runs = id;
    }
    trace_.slots.push_back(std::move(slot));

    active_[index].remaining -= Rational(1);
    if (active_[index].remaining.sign() == 0) {
        complete(index);
    }
    ++clock_;
    return id;
}

void SingleMachineScheduler::advance_to(Time t) {
    while (clock_ < t) {
        if (active_.empty()) {
            running_.reset();
            clock_ = t;
            break;
        }
        select_slot();
    }
}

void SingleMachineScheduler::drain() {
    while (!active_.empty()) {
        select_slot();
    }
}

ScheduleTrace SingleMachineScheduler::finish() const {
    ScheduleTrace out = trace_;
    out.tables = tables_.audit_tables();
    out.complete = active_.empty();
    return out;
}

ScheduleTrace run(const Instance& instance, MachineIndex machine) {
    SingleMachineScheduler scheduler(machine, instance.epsilon);
    for (const Job& job : instance.jobs) {
        scheduler.on_arrival(job);
    }
    scheduler.drain();
    return scheduler.finish();
}

}  // namespace rejsched
