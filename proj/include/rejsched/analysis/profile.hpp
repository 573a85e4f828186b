#pragma once

#include <rejsched/scheduler/trace.hpp>

#include <map>
#include <optional>
#include <vector>

namespace rejsched {

struct ClassPoint {
    Time t = 0;
    Rational size;    ///< P^delta(t): total residual size of the class in A(t)
    Rational weight;  ///< W^delta(t): total residual weight
};

struct ClassSeries {
    int delta = 0;
    std::vector<ClassPoint> points;  ///< busy instants where the class is non-empty
    Rational max_size;
    Rational max_weight;
};

/// Index set of a J- job: the lower classes theta holding at least
/// 1.5^(delta - theta) p_j / (8 eps) residual size at r_j (before j joins).
struct MinusIndexSet {
    JobId job = 0;
    int delta = 0;
    std::vector<int> classes;
    /// alpha_j^- / (4 p_j sum_{theta in I_j} W^theta); nullopt when I_j is empty.
    std::optional<Rational> coverage;
};

/// Density-class view of A's active set sampled at integer instants after
/// arrivals, plus ratio diagnostics of the alpha-controlling bounds. Each
/// ratio is nullopt when its denominator vanishes. None is asserted: the
/// bounds only hold up to unspecified constants.
struct DensityProfile {
    std::map<int, ClassSeries> classes;
    Rational lambda_plus;   ///< sum of alpha_j^+
    Rational total_work;    ///< sum w_j p_j
    Rational sum_peak_products;  ///< sum over classes of max P^delta * max W^delta
    std::vector<MinusIndexSet> index_sets;  ///< J- jobs in arrival order

    std::optional<Rational> class_product_ratio;  ///< sum P W / (sum wp + Lambda+)
    std::optional<Rational> plus_ratio;    ///< eps sum alpha+ / (sum wp + sum_imm alpha+)
    std::optional<Rational> minus_ratio;   ///< eps sum alpha- / (sum wp + sum_imm alpha)
    std::optional<Rational> alpha_ratio;   ///< eps sum alpha / (sum_imm alpha + sum wp)
    std::optional<Rational> first_minus_ratio;  ///< sum over first T- members of alpha- / (eps sum P W)
};

[[nodiscard]] DensityProfile density_profile(const ScheduleTrace& trace);

}  // namespace rejsched
