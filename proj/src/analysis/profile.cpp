#include <rejsched/analysis/profile.hpp>

#include <unordered_map>

namespace rejsched {

namespace {

std::optional<Rational> ratio(const Rational& num, const Rational& den) {
    if (den.sign() == 0) {
        return std::nullopt;
    }
    return num / den;
}

// 1.5^k for k >= 1.
Rational three_halves_pow(int k) {
    Rational out(1);
    for (int i = 0; i < k; ++i) {
        out *= Rational(3, 2);
    }
    return out;
}

class Sweep {
public:
    explicit Sweep(const ScheduleTrace& trace, DensityProfile& out) : trace_(trace), out_(out) {}

    void arrive(const JobRecord& r) {
        const int delta = r.alpha.density_class;
        if (r.alpha.in_j_minus) {
            index_set(r, delta);
        }
        if (!r.immediately_rejected()) {
            class_of_[r.id] = delta;
            density_of_[r.id] = r.density();
            Level& l = level_[delta];
            l.size += Rational(r.size);
            l.weight += r.weight;
        }
    }

    void sample(Time t) {
        for (auto& [delta, l] : level_) {
            if (l.size.sign() == 0) {
                continue;
            }
            ClassSeries& s = out_.classes[delta];
            s.delta = delta;
            s.points.push_back({t, l.size, l.weight});
            s.max_size = max(s.max_size, l.size);
            s.max_weight = max(s.max_weight, l.weight);
        }
    }

    void run(JobId id) {
        Level& l = level_[class_of_.at(id)];
        l.size -= Rational(1);
        l.weight -= density_of_.at(id);
    }

    // I_j needs the final maxima W^theta, so coverage is filled in afterwards.
    void finish() {
        for (std::size_t i = 0; i < out_.index_sets.size(); ++i) {
            MinusIndexSet& set = out_.index_sets[i];
            if (set.classes.empty()) {
                continue;
            }
            Rational w;
            for (int theta : set.classes) {
                w += out_.classes.at(theta).max_weight;
            }
            const JobRecord& r = *minus_jobs_[i];
            set.coverage = r.alpha.alpha_minus / (Rational(4) * Rational(r.size) * w);
        }
    }

private:
    struct Level {
        Rational size;
        Rational weight;
    };

    void index_set(const JobRecord& r, int delta) {
        MinusIndexSet set{r.id, delta, {}, std::nullopt};
        const Rational base = Rational(r.size) / (Rational(8) * trace_.epsilon);
        for (const auto& [theta, l] : level_) {
            if (theta >= delta) {
                break;
            }
            if (l.size.sign() > 0 && l.size >= three_halves_pow(delta - theta) * base) {
                set.classes.push_back(theta);
            }
        }
        out_.index_sets.push_back(std::move(set));
        minus_jobs_.push_back(&r);
    }

    const ScheduleTrace& trace_;
    DensityProfile& out_;
    std::map<int, Level> level_;
    std::unordered_map<JobId, int> class_of_;
    std::unordered_map<JobId, Rational> density_of_;
    std::vector<const JobRecord*> minus_jobs_;
};

}  // namespace

DensityProfile density_profile(const ScheduleTrace& trace) {
    DensityProfile out;
    Sweep sweep(trace, out);
    std::size_t next = 0;
    for (const SlotRecord& slot : trace.slots) {
        while (next < trace.jobs.size() && trace.jobs[next].release <= slot.t) {
            sweep.arrive(trace.jobs[next++]);
        }
        sweep.sample(slot.t);
        if (slot.a_runs) {
            sweep.run(*slot.a_runs);
        }
    }
    while (next < trace.jobs.size()) {
        sweep.arrive(trace.jobs[next++]);
    }
    sweep.finish();

    Rational imm_plus;
    Rational imm_alpha;
    Rational minus;
    Rational alpha;
    Rational first_minus;
    for (const JobRecord& r : trace.jobs) {
        out.lambda_plus += r.alpha.alpha_plus;
        out.total_work += r.weight * Rational(r.size);
        minus += r.alpha.alpha_minus;
        alpha += r.alpha.alpha;
        if (r.immediately_rejected()) {
            imm_plus += r.alpha.alpha_plus;
            imm_alpha += r.alpha.alpha;
        }
        if (r.decision.assigned_minus && r.decision.minus_ordinal == 1) {
            first_minus += r.alpha.alpha_minus;
        }
    }
    for (const auto& [delta, s] : out.classes) {
        out.sum_peak_products += s.max_size * s.max_weight;
    }

    const Rational& eps = trace.epsilon;
    out.class_product_ratio = ratio(out.sum_peak_products, out.total_work + out.lambda_plus);
    out.plus_ratio = ratio(eps * out.lambda_plus, out.total_work + imm_plus);
    out.minus_ratio = ratio(eps * minus, out.total_work + imm_alpha);
    out.alpha_ratio = ratio(eps * alpha, imm_alpha + out.total_work);
    out.first_minus_ratio = ratio(first_minus, eps * out.sum_peak_products);
    return out;
}

}  // namespace rejsched
