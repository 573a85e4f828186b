#include "support.hpp"

#include <rejsched/alpha/alpha.hpp>
#include <rejsched/core/error.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace rejsched;
using namespace rejsched::testing;

namespace {

struct Pending {
    Rational density;
    std::int64_t remaining;
};

// Total fractional weighted flow from now on under preemptive HDF with no
// further arrivals, simulated slot by slot with linear accrual inside a slot.
Rational hdf_fractional_flow(std::vector<Pending> jobs) {
    Rational total;
    while (true) {
        auto best = jobs.end();
        for (auto it = jobs.begin(); it != jobs.end(); ++it) {
            if (it->remaining > 0 && (best == jobs.end() || it->density > best->density)) {
                best = it;
            }
        }
        if (best == jobs.end()) {
            return total;
        }
        for (auto it = jobs.begin(); it != jobs.end(); ++it) {
            if (it->remaining == 0) {
                continue;
            }
            const Rational rem(it->remaining);
            total += it == best ? it->density * (rem - Rational(1, 2)) : it->density * rem;
        }
        --best->remaining;
    }
}

Rational oracle_alpha(const Job& j, const std::vector<ResidualJob>& active) {
    std::vector<Pending> before;
    for (const ResidualJob& r : active) {
        before.push_back({r.density, r.remaining.floor()});
    }
    std::vector<Pending> after = before;
    after.push_back({j.density(0), j.size_on(0)});
    return hdf_fractional_flow(after) - hdf_fractional_flow(before);
}

ResidualJob residual(const Job& j, std::int64_t remaining) {
    ResidualJob r = ResidualJob::fresh(j, 0);
    r.remaining = Rational(remaining);
    return r;
}

}  // namespace

TEST_CASE("floor_log examples") {
    CHECK(floor_log(Rational(8)) == 3);
    CHECK(floor_log(Rational(7)) == 2);
    CHECK(floor_log(Rational(1, 2)) == -1);
    CHECK(floor_log(Rational(1)) == 0);
    CHECK(floor_log(Rational(3, 8)) == -2);
    CHECK(floor_log(Rational(1, 3)) == -2);
    CHECK(floor_log(Rational(1, 4)) == -2);
    CHECK_THROWS_AS((void)floor_log(Rational(0)), Error);
    CHECK_THROWS_AS((void)floor_log(Rational(-2)), Error);
}

TEST_CASE("floor_log brackets its argument") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> d(1, 1 << 20);
    for (int i = 0; i < 5000; ++i) {
        const Rational x(d(rng), d(rng));
        const int k = floor_log(x);
        Rational lo(1);
        for (int s = 0; s < std::abs(k); ++s) {
            lo = k > 0 ? lo * Rational(2) : lo / Rational(2);
        }
        CHECK(lo <= x);
        CHECK(x < lo * Rational(2));
    }
}

TEST_CASE("density_class examples") {
    CHECK(density_class(job(1, 0, 6, 3), 0) == 1);
    CHECK(density_class(job(1, 0, 1, 4), 0) == -2);
    CHECK(density_class(job(1, 0, 3, 3), 0) == 0);
    CHECK_THROWS_AS((void)density_class(Job{1, 0, 1, {std::nullopt}}, 0), Error);
}

TEST_CASE("compute_alpha examples") {
    const Rational eps(1, 2);
    const Job j = job(9, 0, 2, 4);
    const AlphaBreakdown empty = compute_alpha(j, 0, {}, eps);
    CHECK(empty.alpha == Rational(4));
    CHECK(empty.alpha_plus == Rational(0));
    CHECK(empty.alpha_minus == Rational(0));

    const Job dense = job(1, 0, 6, 3);
    const std::vector<ResidualJob> a1{residual(dense, 3)};
    const AlphaBreakdown b1 = compute_alpha(j, 0, a1, eps);
    CHECK(b1.density_class == -1);
    CHECK(b1.alpha_plus == Rational(6));
    CHECK(b1.alpha_minus == Rational(0));
    CHECK(b1.alpha == Rational(10));
    CHECK(b1.alpha == oracle_alpha(j, a1));

    const Job sparse = job(2, 0, 1, 2);
    const Job heavy = job(10, 0, 4, 2);
    const std::vector<ResidualJob> a2{residual(sparse, 2)};
    const AlphaBreakdown b2 = compute_alpha(heavy, 0, a2, eps);
    CHECK(b2.alpha_plus == Rational(0));
    CHECK(b2.alpha_minus == Rational(2));
    CHECK(b2.alpha == Rational(6));
    CHECK(b2.alpha == oracle_alpha(heavy, a2));
}

TEST_CASE("compute_alpha rejects a job already active") {
    const Job j = job(1, 0, 1, 2);
    const std::vector<ResidualJob> a{ResidualJob::fresh(j, 0)};
    CHECK_THROWS_AS((void)compute_alpha(j, 0, a, Rational(1, 2)), Error);
}

TEST_CASE("membership thresholds") {
    // w p / eps = 4 with eps = 1/2, w = 1, p = 2.
    const Rational eps(1, 2);
    const Job j = job(5, 0, 1, 2);
    // Same-density neighbour with residual 4 gives alpha+ = w * 4 = 4 (>= 4).
    const Job same = job(1, 0, 2, 4);
    const AlphaBreakdown plus = compute_alpha(j, 0, std::vector<ResidualJob>{residual(same, 4)}, eps);
    CHECK(plus.alpha_plus == Rational(4));
    CHECK(plus.in_j_plus);

    // Lower class neighbour with residual weight 2 gives alpha- = p * 2 = 4 (not > 4).
    const Job low = job(2, 0, 2, 16);
    const AlphaBreakdown eq = compute_alpha(j, 0, std::vector<ResidualJob>{residual(low, 16)}, eps);
    CHECK(eq.alpha_minus == Rational(4));
    CHECK_FALSE(eq.in_j_minus);
    const Job low2 = job(3, 0, Rational(9, 4), 16);
    const AlphaBreakdown gt = compute_alpha(j, 0, std::vector<ResidualJob>{residual(low2, 16)}, eps);
    CHECK(gt.in_j_minus);
}

TEST_CASE("compute_alpha equals the HDF flow increase") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int64_t> size(1, 9);
    std::uniform_int_distribution<std::int64_t> weight(1, 12);
    std::uniform_int_distribution<std::int64_t> den(1, 4);
    std::uniform_int_distribution<int> count(0, 8);
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Job> pool;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) {
            pool.push_back(job(static_cast<JobId>(i + 1), 0, Rational(weight(rng), den(rng)), size(rng)));
        }
        std::vector<ResidualJob> active;
        for (const Job& p : pool) {
            std::uniform_int_distribution<std::int64_t> rem(1, p.size_on(0));
            active.push_back(residual(p, rem(rng)));
        }
        const Job j = job(100, 0, Rational(weight(rng), den(rng)), size(rng));
        const AlphaBreakdown b = compute_alpha(j, 0, active, Rational(1, 4));
        CAPTURE(trial);
        CHECK(b.alpha == oracle_alpha(j, active));
        CHECK(b.alpha == b.alpha_plus + b.self_term + b.alpha_minus);
        CHECK(b.alpha_plus.sign() >= 0);
        CHECK(b.alpha_minus.sign() >= 0);
        CHECK(b.self_term == j.weight * Rational(j.size_on(0)) / Rational(2));

        // Adding one more active job never lowers alpha.
        const Job extra = job(200, 0, Rational(weight(rng), den(rng)), size(rng));
        std::vector<ResidualJob> bigger = active;
        bigger.push_back(ResidualJob::fresh(extra, 0));
        CHECK(compute_alpha(j, 0, bigger, Rational(1, 4)).alpha >= b.alpha);
    }
}
