#include <rejsched/baselines/baselines.hpp>
#include <rejsched/core/error.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace rejsched {

namespace {

bool hdf_before(const OfflineJob& a, const Rational& da, const OfflineJob& b, const Rational& db) {
    const auto order = da <=> db;
    if (order != 0) {
        return order > 0;
    }
    if (a.release != b.release) {
        return a.release < b.release;
    }
    return a.id < b.id;
}

Time min_release(std::span<const OfflineJob> jobs) {
    Time t = jobs.front().release;
    for (const auto& j : jobs) {
        t = std::min(t, j.release);
    }
    return t;
}

}  // namespace

std::vector<OfflineJob> offline_jobs(const Instance& instance, MachineIndex machine) {
    std::vector<OfflineJob> out;
    out.reserve(instance.jobs.size());
    for (const Job& j : instance.jobs) {
        out.push_back({j.id, j.release, j.weight, j.size_on(machine)});
    }
    return out;
}

std::vector<OfflineJob> offline_jobs(const Instance& instance, MachineIndex machine, std::span<const JobId> ids) {
    std::unordered_map<JobId, const Job*> by_id;
    for (const Job& j : instance.jobs) {
        by_id.emplace(j.id, &j);
    }
    std::vector<OfflineJob> out;
    out.reserve(ids.size());
    for (JobId id : ids) {
        const Job& j = *by_id.at(id);
        out.push_back({j.id, j.release, j.weight, j.size_on(machine)});
    }
    return out;
}

FractionalSchedule preemptive_hdf(std::span<const OfflineJob> jobs, const Rational& speed) {
    FractionalSchedule out;
    out.speed = speed;
    out.jobs.assign(jobs.begin(), jobs.end());
    if (speed < Rational(1)) {
        throw Error(ErrorCode::BadParameters, "speed must be at least 1");
    }
    if (jobs.empty()) {
        return out;
    }

    std::vector<std::size_t> order(jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rational> density(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        density[i] = jobs[i].density();
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return hdf_before(jobs[a], density[a], jobs[b], density[b]);
    });

    std::vector<Rational> remaining(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        remaining[i] = Rational(jobs[i].size);
    }
    std::size_t unfinished = jobs.size();
    Time t = min_release(jobs);
    while (unfinished > 0) {
        SlotAllocation slot;
        slot.t = t;
        Rational capacity = speed;
        for (std::size_t i : order) {
            if (capacity.sign() == 0) {
                break;
            }
            if (jobs[i].release > t || remaining[i].sign() == 0) {
                continue;
            }
            Rational amount = min(capacity, remaining[i]);
            capacity -= amount;
            remaining[i] -= amount;
            if (remaining[i].sign() == 0) {
                --unfinished;
            }
            slot.amounts.emplace_back(jobs[i].id, std::move(amount));
        }
        if (slot.amounts.empty()) {
            // Idle: jump to the next release.
            Time next = 0;
            bool found = false;
            for (std::size_t i = 0; i < jobs.size(); ++i) {
                if (remaining[i].sign() > 0 && jobs[i].release > t && (!found || jobs[i].release < next)) {
                    next = jobs[i].release;
                    found = true;
                }
            }
            t = next;
            continue;
        }
        out.slots.push_back(std::move(slot));
        ++t;
    }
    return out;
}

Rational lp_cost(const FractionalSchedule& schedule) {
    std::unordered_map<JobId, const OfflineJob*> by_id;
    for (const auto& j : schedule.jobs) {
        by_id.emplace(j.id, &j);
    }
    Rational total;
    for (const auto& slot : schedule.slots) {
        for (const auto& [id, amount] : slot.amounts) {
            const OfflineJob& j = *by_id.at(id);
            const Rational unit = j.weight * (Rational(slot.t - j.release) / Rational(j.size) + Rational(1, 2));
            total += unit * amount;
        }
    }
    return total;
}

Time default_horizon(std::span<const OfflineJob> jobs, const Rational& speed) {
    Time max_r = 0;
    std::int64_t total = 0;
    for (const auto& j : jobs) {
        max_r = std::max(max_r, j.release);
        total += j.size;
    }
    return max_r + (Rational(total) / speed).ceil() + 1;
}

namespace {

/// Min-cost flow on a small dense graph with integer capacities and exact
/// rational costs. Successive shortest paths, Dijkstra on reduced costs.
class MinCostFlow {
public:
    explicit MinCostFlow(std::size_t nodes) : adj_(nodes) {}

    void add_edge(std::size_t from, std::size_t to, std::int64_t cap, const Rational& cost) {
        adj_[from].push_back({to, adj_[to].size(), cap, cost});
        adj_[to].push_back({from, adj_[from].size() - 1, 0, -cost});
    }

    /// Returns (flow, cost). All initial costs must be non-negative.
    std::pair<std::int64_t, Rational> solve(std::size_t source, std::size_t sink, std::int64_t want) {
        const std::size_t n = adj_.size();
        std::vector<Rational> potential(n);
        std::int64_t flow = 0;
        Rational cost;
        std::vector<Rational> dist(n);
        std::vector<bool> reached(n);
        std::vector<bool> done(n);
        std::vector<std::pair<std::size_t, std::size_t>> prev(n);  // (node, edge index)

        while (flow < want) {
            std::fill(reached.begin(), reached.end(), false);
            std::fill(done.begin(), done.end(), false);
            dist[source] = Rational(0);
            reached[source] = true;
            for (;;) {
                std::size_t u = n;
                for (std::size_t v = 0; v < n; ++v) {
                    if (reached[v] && !done[v] && (u == n || dist[v] < dist[u])) {
                        u = v;
                    }
                }
                if (u == n) {
                    break;
                }
                done[u] = true;
                for (std::size_t e = 0; e < adj_[u].size(); ++e) {
                    const Edge& edge = adj_[u][e];
                    if (edge.cap == 0 || done[edge.to]) {
                        continue;
                    }
                    Rational candidate = dist[u] + edge.cost + potential[u] - potential[edge.to];
                    if (!reached[edge.to] || candidate < dist[edge.to]) {
                        dist[edge.to] = std::move(candidate);
                        reached[edge.to] = true;
                        prev[edge.to] = {u, e};
                    }
                }
            }
            if (!reached[sink]) {
                break;
            }
            Rational furthest;
            for (std::size_t v = 0; v < n; ++v) {
                if (reached[v] && dist[v] > furthest) {
                    furthest = dist[v];
                }
            }
            for (std::size_t v = 0; v < n; ++v) {
                potential[v] += reached[v] ? dist[v] : furthest;
            }

            std::int64_t push = want - flow;
            for (std::size_t v = sink; v != source; v = prev[v].first) {
                push = std::min(push, adj_[prev[v].first][prev[v].second].cap);
            }
            for (std::size_t v = sink; v != source; v = prev[v].first) {
                Edge& edge = adj_[prev[v].first][prev[v].second];
                edge.cap -= push;
                adj_[v][edge.rev].cap += push;
                cost += edge.cost * Rational(push);
            }
            flow += push;
        }
        return {flow, cost};
    }

private:
    struct Edge {
        std::size_t to;
        std::size_t rev;
        std::int64_t cap;
        Rational cost;
    };
    std::vector<std::vector<Edge>> adj_;
};

}  // namespace

Rational transport_opt(std::span<const OfflineJob> jobs, const Rational& speed, std::optional<Time> horizon) {
    if (jobs.empty()) {
        return Rational(0);
    }
    if (speed < Rational(1)) {
        throw Error(ErrorCode::BadParameters, "speed must be at least 1");
    }
    const Time start = min_release(jobs);
    const Time end = horizon.value_or(default_horizon(jobs, speed));
    if (end <= start) {
        throw Error(ErrorCode::HorizonTooShort, "horizon " + std::to_string(end));
    }
    const auto slots = static_cast<std::size_t>(end - start);

    // Scale flow by den(speed) so that every capacity is integral.
    const mpz_class& den_z = speed.denominator();
    const mpz_class& num_z = speed.numerator();
    if (!den_z.fits_slong_p() || !num_z.fits_slong_p()) {
        throw Error(ErrorCode::TooLarge, "speed " + speed.str());
    }
    const std::int64_t scale = den_z.get_si();
    const std::int64_t slot_cap = num_z.get_si();

    const std::size_t source = 0;
    const std::size_t first_slot = 1;
    const std::size_t first_job = first_slot + slots;
    const std::size_t sink = first_job + jobs.size();
    MinCostFlow graph(sink + 1);

    std::int64_t demand = 0;
    for (std::size_t s = 0; s < slots; ++s) {
        graph.add_edge(source, first_slot + s, slot_cap, Rational(0));
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const OfflineJob& job = jobs[j];
        const std::int64_t need = job.size * scale;
        demand += need;
        graph.add_edge(first_job + j, sink, need, Rational(0));
        const Rational rate = job.density();
        const Rational half = job.weight / Rational(2);
        for (Time t = std::max(job.release, start); t < end; ++t) {
            graph.add_edge(first_slot + static_cast<std::size_t>(t - start), first_job + j, need,
                           rate * Rational(t - job.release) + half);
        }
    }

    auto [flow, cost] = graph.solve(source, sink, demand);
    if (flow < demand) {
        throw Error(ErrorCode::HorizonTooShort, "horizon " + std::to_string(end) + " cannot hold all work");
    }
    return cost / Rational(scale);
}

Rational brute_force_nonpreemptive(std::span<const OfflineJob> jobs) {
    if (jobs.size() > 6) {
        throw Error(ErrorCode::TooLarge, std::to_string(jobs.size()) + " jobs (max 6)");
    }
    if (jobs.empty()) {
        return Rational(0);
    }
    std::vector<std::size_t> order(jobs.size());
    std::iota(order.begin(), order.end(), 0);
    std::optional<Rational> best;
    do {
        // For a fixed order, starting every job as early as possible is optimal.
        Time clock = 0;
        Rational total;
        for (std::size_t i : order) {
            clock = std::max(clock, jobs[i].release) + jobs[i].size;
            total += jobs[i].weight * Rational(clock - jobs[i].release);
        }
        if (!best || total < *best) {
            best = std::move(total);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return *best;
}

Rational greedy_nonpreemptive_flow(std::span<const OfflineJob> jobs) {
    std::vector<std::size_t> pending(jobs.size());
    std::iota(pending.begin(), pending.end(), 0);
    std::vector<Rational> density(jobs.size());
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        density[i] = jobs[i].density();
    }
    Time clock = jobs.empty() ? 0 : min_release(jobs);
    Rational total;
    while (!pending.empty()) {
        std::optional<std::size_t> pick;
        Time next_release = 0;
        bool have_next = false;
        for (std::size_t pos = 0; pos < pending.size(); ++pos) {
            const std::size_t i = pending[pos];
            if (jobs[i].release <= clock) {
                if (!pick || hdf_before(jobs[i], density[i], jobs[pending[*pick]], density[pending[*pick]])) {
                    pick = pos;
                }
            } else if (!have_next || jobs[i].release < next_release) {
                next_release = jobs[i].release;
                have_next = true;
            }
        }
        if (!pick) {
            clock = next_release;
            continue;
        }
        const std::size_t i = pending[*pick];
        clock += jobs[i].size;
        total += jobs[i].weight * Rational(clock - jobs[i].release);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*pick));
    }
    return total;
}

bool oracle_fits(std::span<const OfflineJob> jobs, const Rational& speed, const OracleLimits& limits) {
    if (jobs.size() > limits.max_jobs) {
        return false;
    }
    if (jobs.empty()) {
        return true;
    }
    const Time span = default_horizon(jobs, speed) - min_release(jobs);
    return static_cast<std::int64_t>(jobs.size()) * span <= limits.max_cells;
}

Benchmark offline_benchmark(std::span<const OfflineJob> jobs, const Rational& speed, const OracleLimits& limits) {
    if (oracle_fits(jobs, speed, limits)) {
        return {transport_opt(jobs, speed), BenchmarkMethod::Transport};
    }
    return {lp_cost(preemptive_hdf(jobs, speed)), BenchmarkMethod::HdfLp};
}

}  // namespace rejsched
