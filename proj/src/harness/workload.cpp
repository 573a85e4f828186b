#include <rejsched/core/error.hpp>
#include <rejsched/harness/workload.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace rejsched {

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::PoissonPareto: return "poisson_pareto";
        case ModelKind::Uniform: return "uniform";
        case ModelKind::AdversarialL: return "adversarial_L";
        case ModelKind::Fixed: return "fixed";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
    for (ModelKind k : {ModelKind::PoissonPareto, ModelKind::Uniform, ModelKind::AdversarialL, ModelKind::Fixed}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw Error(ErrorCode::BadParameters, "unknown model '" + std::string(name) + "'");
}

namespace {

// Samplers are written out instead of using <random> distributions so that a
// seed gives the same trace with any standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) {
            return static_cast<std::int64_t>(rng_());
        }
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t x = rng_();
        while (x >= limit) {
            x = rng_();
        }
        return lo + static_cast<std::int64_t>(x % span);
    }

    double exponential(double rate) { return -std::log1p(-unit()) / rate; }

    double pareto(double shape, double scale) { return scale / std::pow(1.0 - unit(), 1.0 / shape); }

private:
    std::mt19937_64 rng_;
};

void require(bool ok, const char* what) {
    if (!ok) {
        throw Error(ErrorCode::BadParameters, what);
    }
}

Rational random_weight(Sampler& s, std::int64_t max_weight) {
    static constexpr std::int64_t kDenominators[] = {1, 2, 4};
    const std::int64_t k = s.uniform(1, max_weight);
    return Rational(k, kDenominators[s.uniform(0, 2)]);
}

std::vector<std::optional<std::int64_t>> machine_sizes(Sampler& s, std::int64_t base, const WorkloadModel& m) {
    std::vector<std::optional<std::int64_t>> sizes(m.machines);
    if (m.machines == 1) {
        sizes[0] = base;
        return sizes;
    }
    const auto keep = static_cast<std::size_t>(s.uniform(0, static_cast<std::int64_t>(m.machines) - 1));
    for (std::size_t i = 0; i < m.machines; ++i) {
        const std::int64_t factor = s.uniform(1, 3);
        if (i != keep && s.unit() < m.missing) {
            continue;
        }
        sizes[i] = base * factor;
    }
    return sizes;
}

void check(const WorkloadModel& m) {
    require(m.machines >= 1, "machines must be >= 1");
    require(m.missing >= 0.0 && m.missing < 1.0, "missing must lie in [0, 1)");
    require(m.max_size >= 1, "max_size must be >= 1");
    require(m.max_weight >= 1, "max_weight must be >= 1");
    switch (m.kind) {
        case ModelKind::PoissonPareto:
            require(m.arrival_rate > 0.0 && std::isfinite(m.arrival_rate), "arrival_rate must be positive");
            require(m.pareto_shape > 0.0 && std::isfinite(m.pareto_shape), "pareto_shape must be positive");
            require(m.pareto_scale > 0.0 && std::isfinite(m.pareto_scale), "pareto_scale must be positive");
            break;
        case ModelKind::Uniform:
            require(m.horizon >= 1, "horizon must be >= 1");
            break;
        case ModelKind::AdversarialL:
            require(m.L >= 1, "L must be >= 1");
            require(m.scale >= 1, "scale must be >= 1");
            require(m.L <= 100000 && m.scale <= 1000000 / m.L, "L^2 * scale too large");
            break;
        case ModelKind::Fixed:
            break;
    }
}

}  // namespace

Workload generate(const WorkloadModel& model) {
    check(model);
    Workload out;
    out.seed = model.seed;
    Instance& inst = out.instance;
    inst.machines = model.machines;
    inst.epsilon = model.epsilon;
    Sampler s(model.seed);

    auto push = [&](Time release, Rational weight, std::int64_t base) {
        Job job;
        job.id = inst.jobs.size() + 1;
        job.release = release;
        job.weight = std::move(weight);
        job.sizes = machine_sizes(s, base, model);
        inst.jobs.push_back(std::move(job));
    };

    switch (model.kind) {
        case ModelKind::PoissonPareto: {
            double clock = 0.0;
            for (std::size_t i = 0; i < model.n; ++i) {
                clock += s.exponential(model.arrival_rate);
                const double raw = std::ceil(s.pareto(model.pareto_shape, model.pareto_scale));
                const auto size = static_cast<std::int64_t>(std::min(raw, static_cast<double>(model.max_size)));
                Rational w = random_weight(s, model.max_weight);
                push(static_cast<Time>(std::floor(clock)), std::move(w), std::max<std::int64_t>(size, 1));
            }
            break;
        }
        case ModelKind::Uniform: {
            std::vector<Time> releases(model.n);
            for (Time& r : releases) {
                r = s.uniform(0, model.horizon - 1);
            }
            std::sort(releases.begin(), releases.end());
            for (Time r : releases) {
                const std::int64_t size = s.uniform(1, model.max_size);
                Rational w = random_weight(s, model.max_weight);
                push(r, std::move(w), size);
            }
            break;
        }
        case ModelKind::AdversarialL: {
            const std::int64_t big = model.L * model.L * model.scale;
            push(0, Rational(1), big);
            for (std::int64_t i = 1; i <= model.L; ++i) {
                push(i, Rational(1), 1);
            }
            out.time_scale = big;
            break;
        }
        case ModelKind::Fixed:
            for (std::size_t i = 0; i < model.n; ++i) {
                push(static_cast<Time>(i), Rational(1), model.max_size);
            }
            break;
    }
    return out;
}

}  // namespace rejsched
