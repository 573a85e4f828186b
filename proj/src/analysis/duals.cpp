#include <rejsched/analysis/duals.hpp>
#include <rejsched/analysis/metrics.hpp>
#include <rejsched/core/error.hpp>

namespace rejsched {

namespace {

constexpr std::size_t kMaxListedViolations = 16;

Rational work_over_epsilon(const ScheduleTrace& trace) {
    Rational sum;
    for (const JobRecord& r : trace.jobs) {
        sum += r.weight * Rational(r.size);
    }
    return trace.jobs.empty() ? sum : sum / trace.epsilon;
}

}  // namespace

DualCertificate verify_duals(const ScheduleTrace& trace, const Rational& speedup) {
    DualCertificate cert;
    cert.speedup = speedup;

    const Time horizon = trace.horizon();
    std::vector<Rational> beta(static_cast<std::size_t>(horizon));
    for (const SlotRecord& slot : trace.slots) {
        beta[static_cast<std::size_t>(slot.t)] = slot.beta;
        if (slot.beta.sign() != 0) {
            cert.betas.emplace_back(slot.t, slot.beta);
        }
        cert.sum_beta += slot.beta;
    }

    const Rational half(1, 2);
    for (const JobRecord& r : trace.jobs) {
        cert.alphas.emplace_back(r.id, r.alpha.alpha);
        cert.sum_alpha += r.alpha.alpha;

        // Multiplied through by p_j: alpha_j - w_j p_j/2 - w_j (t - r_j) <= p_j beta_t.
        // Once w_j (t - r_j) reaches alpha_j - w_j p_j/2 every later t holds too,
        // including the slots past the horizon where beta is 0.
        const Rational p(r.size);
        const Rational excess = r.alpha.alpha - r.weight * p * half;
        Time t = r.release;
        Rational waited;
        while (waited < excess) {
            ++cert.pairs_checked;
            const Rational& b = t < horizon ? beta[static_cast<std::size_t>(t)] : Rational(0);
            if (excess - waited > p * b) {
                cert.feasible = false;
                ++cert.violation_count;
                if (cert.violations.size() < kMaxListedViolations) {
                    cert.violations.push_back({r.id, t, r.alpha.alpha / p - b,
                                               r.weight * Rational(t - r.release) / p + r.weight * half});
                }
            }
            ++t;
            waited += r.weight;
        }
        if (t <= horizon) {
            cert.pairs_implied += static_cast<std::uint64_t>(horizon - t + 1);
        }
    }
    cert.objective = cert.sum_alpha - (Rational(1) + speedup) * cert.sum_beta;
    return cert;
}

LowerBoundVerdict lower_bound_check(const ScheduleTrace& trace, const Rational& benchmark, const Rational& speedup) {
    LowerBoundVerdict v;
    v.benchmark = benchmark;
    v.work_over_epsilon = work_over_epsilon(trace);
    for (const JobRecord& r : trace.jobs) {
        (r.immediately_rejected() ? v.immediate_alpha : v.kept_alpha) += r.alpha.alpha;
    }
    v.fractional_flow_A = compute_metrics(trace).fractional_flow_A;
    v.opt_lower_bound = v.immediate_alpha <= benchmark + v.work_over_epsilon;
    v.algorithm_upper_bound = v.fractional_flow_A <= v.kept_alpha + v.work_over_epsilon;
    if (speedup.sign() > 0) {
        const Rational total = v.immediate_alpha + v.kept_alpha;
        v.augmented_lower_bound =
            v.immediate_alpha - Rational(2) * speedup * total - Rational(2) * v.work_over_epsilon <= benchmark;
    }
    return v;
}

LowerBoundVerdict lower_bound_check(const ScheduleTrace& trace, const OracleLimits& limits, const Rational& speedup) {
    const std::vector<OfflineJob> jobs = offline_jobs(trace);
    const Rational speed = Rational(1) + speedup;
    if (!oracle_fits(jobs, speed, limits)) {
        throw Error(ErrorCode::TooLargeForOracle,
                    std::to_string(jobs.size()) + " jobs exceed the transportation oracle limits");
    }
    return lower_bound_check(trace, transport_opt(jobs, speed), speedup);
}

}  // namespace rejsched
